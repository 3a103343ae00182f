// Matrix-free linear and nonlinear solvers: restarted GMRES over operator
// callbacks (modified Gram-Schmidt Arnoldi with Givens rotations) and a
// Jacobian-free Newton-Krylov wrapper whose Jacobian-vector products are
// forward finite differences of the residual.

#pragma once

#include <functional>
#include <vector>

namespace swv {

struct LinearOperatorHandle {
  int dimension = 0;
  std::function<void(const std::vector<double>& in, std::vector<double>& out)> apply;
};

struct SolveReport {
  int iterations = 0;  // gmres: operator applications; jfnk: Newton steps
  double residual_norm = 0.0;
  bool converged = false;
  long inner_iterations = 0;  // jfnk only: Krylov matvecs across all Newton steps
};

// Solves op(x) = rhs to ||op(x) - rhs|| <= max(rel_tol*||rhs||, abs_tol).
// x0 may be empty (zero initial guess). The true residual is recomputed at
// every cycle boundary; a cycle without progress ends the solve with
// converged = false (the caller decides severity). When residual_history is
// given it receives the implicit residual norm after each inner iteration.
std::vector<double> gmres(const LinearOperatorHandle& op, const std::vector<double>& rhs,
                          const std::vector<double>& x0, double rel_tol, double abs_tol,
                          int restart, int max_iters, SolveReport& report,
                          std::vector<double>* residual_history = nullptr);

using ResidualFn = std::function<void(const std::vector<double>& x, std::vector<double>& out)>;

// Forward-difference directional derivative of the residual at x along v,
// the Jacobian-vector product the Newton solve uses:
//   J v ~ [F(x + eps v) - F(x)] / eps,  eps = sqrt(machine eps)*(1+||x||)/||v||.
std::vector<double> jacobian_vector_product(const ResidualFn& residual,
                                            const std::vector<double>& x,
                                            const std::vector<double>& fx,
                                            const std::vector<double>& v);

struct JfnkOptions {
  double newton_rel_tol = 1e-8;
  double newton_abs_tol = 1e-14;
  double krylov_rel_tol = 1e-5;
  int max_newton = 50;
  int krylov_restart = 30;
  int krylov_max_iters = 400;
};

// Full Newton steps (no line search), inner solves by gmres at
// krylov_rel_tol. Converged when ||F(x)|| <= max(newton_rel_tol*||F(x0)||,
// newton_abs_tol). Throws std::runtime_error with the last residual norm when
// the Newton iteration cap is exceeded.
std::vector<double> jfnk_solve(const ResidualFn& residual, const std::vector<double>& x0,
                               const JfnkOptions& opts, SolveReport& report);

}  // namespace swv
