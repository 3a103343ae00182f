// Fixed-step time integration over an autonomous right-hand side callback:
// the implicit midpoint rule
//
//   y = x_k + dt f((x_k + y)/2),
//
// solved by Jacobian-free Newton-Krylov (midpoint preserves every quadratic
// invariant of the flow up to solver tolerance), and the three-stage
// Bogacki-Shampine explicit Runge-Kutta method of order three for the
// time-reversibility experiments. The run driver advances from t0 to t_final
// in steps of magnitude cfg.dt (backward when t_final < t0, which is how
// reversed runs are expressed), records diagnostics on a step cadence, and
// requires every requested snapshot time to land on a step boundary.

#pragma once

#include <functional>
#include <vector>

namespace swv {

enum class TimeMethod { kImplicitMidpoint, kRk3BogackiShampine };

struct StepperConfig {
  double dt = 1e-2;
  TimeMethod method = TimeMethod::kImplicitMidpoint;
  double newton_rel_tol = 1e-8;
  double newton_abs_tol = 1e-14;
  double krylov_rel_tol = 1e-5;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Evaluates d(state)/dt into the second argument.
using RhsFn = std::function<void(const std::vector<double>& state, std::vector<double>& out)>;

// Deterministic work counters carried into the run metadata.
struct StepCounters {
  long steps = 0;
  long rhs_evaluations = 0;
  long newton_iterations = 0;
  long krylov_iterations = 0;
};

// One step of size dt (sign chooses the direction) starting at time t. The
// implicit variant throws std::runtime_error annotated with (t, dt) when the
// Newton iteration fails.
std::vector<double> step_implicit_midpoint(const RhsFn& rhs, const std::vector<double>& state,
                                           double t, double dt, const StepperConfig& cfg,
                                           StepCounters* counters = nullptr);
std::vector<double> step_rk3(const RhsFn& rhs, const std::vector<double>& state, double t,
                             double dt, const StepperConfig& cfg,
                             StepCounters* counters = nullptr);
// Dispatch on cfg.method.
std::vector<double> advance_step(const RhsFn& rhs, const std::vector<double>& state, double t,
                                 double dt, const StepperConfig& cfg,
                                 StepCounters* counters = nullptr);

struct RunCallbacks {
  // Called at t0, every `cadence` steps, and at the final step.
  std::function<void(long step, double t, const std::vector<double>& state)> on_record;
  // Called whenever a step time matches a requested snapshot time.
  std::function<void(double t, const std::vector<double>& state)> on_snapshot;
};

// Advances state in place. The step count is (t_final - t0)/cfg.dt, which
// must be a whole number within 1e-9, as must every snapshot time offset;
// violations throw std::invalid_argument before any stepping.
void run_fixed_steps(const RhsFn& rhs, std::vector<double>& state, double t0, double t_final,
                     const StepperConfig& cfg, long cadence,
                     const std::vector<double>& snapshot_times, const RunCallbacks& callbacks,
                     StepCounters* counters = nullptr);

}  // namespace swv
