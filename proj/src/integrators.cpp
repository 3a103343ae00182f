#include "swvlasov/integrators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "swvlasov/krylov.hpp"

namespace swv {

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("stepper dt must be positive and finite, got " +
                                std::to_string(dt));
  }
  if (!(newton_rel_tol > 0.0) || !(newton_abs_tol > 0.0) || !(krylov_rel_tol > 0.0)) {
    throw std::invalid_argument("stepper tolerances must be positive");
  }
}

std::vector<double> step_implicit_midpoint(const RhsFn& rhs, const std::vector<double>& state,
                                           double t, double dt, const StepperConfig& cfg,
                                           StepCounters* counters) {
  const std::size_t n = state.size();
  const ResidualFn residual = [&](const std::vector<double>& y, std::vector<double>& out) {
    thread_local std::vector<double> mid, slope;
    mid.resize(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (state[i] + y[i]);
    rhs(mid, slope);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = y[i] - state[i] - dt * slope[i];
  };

  JfnkOptions opts;
  opts.newton_rel_tol = cfg.newton_rel_tol;
  opts.newton_abs_tol = cfg.newton_abs_tol;
  opts.krylov_rel_tol = cfg.krylov_rel_tol;

  SolveReport report;
  std::vector<double> next;
  try {
    next = jfnk_solve(residual, state, opts, report);
  } catch (const std::runtime_error& err) {
    throw std::runtime_error("implicit midpoint step at t=" + std::to_string(t) + " with dt=" +
                             std::to_string(dt) + " failed: " + err.what());
  }
  if (counters) {
    counters->steps += 1;
    counters->newton_iterations += report.iterations;
    counters->krylov_iterations += report.inner_iterations;
    // One residual evaluation at the start, one per Newton update, one per
    // Krylov matvec; each evaluates the system right-hand side once.
    counters->rhs_evaluations += 1 + report.iterations + report.inner_iterations;
  }
  return next;
}

std::vector<double> step_rk3(const RhsFn& rhs, const std::vector<double>& state, double t,
                             double dt, const StepperConfig& cfg, StepCounters* counters) {
  (void)t;
  (void)cfg;
  const std::size_t n = state.size();
  std::vector<double> k1, k2, k3, stage(n);
  rhs(state, k1);
  for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.5 * dt * k1[i];
  rhs(stage, k2);
  for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.75 * dt * k2[i];
  rhs(stage, k3);
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = state[i] + dt * (2.0 / 9.0 * k1[i] + 1.0 / 3.0 * k2[i] + 4.0 / 9.0 * k3[i]);
  }
  if (counters) {
    counters->steps += 1;
    counters->rhs_evaluations += 3;
  }
  return next;
}

std::vector<double> advance_step(const RhsFn& rhs, const std::vector<double>& state, double t,
                                 double dt, const StepperConfig& cfg, StepCounters* counters) {
  return cfg.method == TimeMethod::kImplicitMidpoint
             ? step_implicit_midpoint(rhs, state, t, dt, cfg, counters)
             : step_rk3(rhs, state, t, dt, cfg, counters);
}

void run_fixed_steps(const RhsFn& rhs, std::vector<double>& state, double t0, double t_final,
                     const StepperConfig& cfg, long cadence,
                     const std::vector<double>& snapshot_times, const RunCallbacks& callbacks,
                     StepCounters* counters) {
  cfg.validate();
  if (cadence < 1) throw std::invalid_argument("diagnostics cadence must be at least 1");

  const double span = t_final - t0;
  const double dt = span >= 0.0 ? cfg.dt : -cfg.dt;
  const long n_steps = std::llround(span / dt);
  const double tol = 1e-9 * std::fmax(1.0, std::fabs(t_final));
  if (std::fabs(t0 + static_cast<double>(n_steps) * dt - t_final) > tol) {
    throw std::invalid_argument("time span " + std::to_string(span) +
                                " is not a whole number of steps of dt " + std::to_string(cfg.dt));
  }

  // Map each snapshot time onto its step index up front.
  std::vector<long> snapshot_steps;
  for (double ts : snapshot_times) {
    const long k = std::llround((ts - t0) / dt);
    if (k < 0 || k > n_steps ||
        std::fabs(t0 + static_cast<double>(k) * dt - ts) > 1e-9 * std::fmax(1.0, std::fabs(ts))) {
      throw std::invalid_argument("snapshot time " + std::to_string(ts) +
                                  " does not land on a step boundary");
    }
    snapshot_steps.push_back(k);
  }

  auto emit_snapshots = [&](long step) {
    if (!callbacks.on_snapshot) return;
    for (std::size_t i = 0; i < snapshot_steps.size(); ++i) {
      if (snapshot_steps[i] == step) callbacks.on_snapshot(snapshot_times[i], state);
    }
  };

  if (callbacks.on_record) callbacks.on_record(0, t0, state);
  emit_snapshots(0);

  for (long k = 1; k <= n_steps; ++k) {
    const double t = t0 + static_cast<double>(k - 1) * dt;
    state = advance_step(rhs, state, t, dt, cfg, counters);
    const double t_now = t0 + static_cast<double>(k) * dt;
    if (callbacks.on_record && (k % cadence == 0 || k == n_steps)) {
      callbacks.on_record(k, t_now, state);
    }
    emit_snapshots(k);
  }
}

}  // namespace swv
