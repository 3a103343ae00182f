#include "swvlasov/krylov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swv {

namespace {

double norm2(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

std::vector<double> gmres(const LinearOperatorHandle& op, const std::vector<double>& rhs,
                          const std::vector<double>& x0, double rel_tol, double abs_tol,
                          int restart, int max_iters, SolveReport& report,
                          std::vector<double>* residual_history) {
  const std::size_t n = static_cast<std::size_t>(op.dimension);
  if (rhs.size() != n) throw std::invalid_argument("gmres: rhs length mismatch");
  if (!x0.empty() && x0.size() != n) throw std::invalid_argument("gmres: guess length mismatch");
  if (rel_tol < 0.0 || abs_tol < 0.0) throw std::invalid_argument("gmres: negative tolerance");
  if (restart < 1) throw std::invalid_argument("gmres: restart must be positive");

  report = SolveReport{};
  if (residual_history) residual_history->clear();

  std::vector<double> x = x0.empty() ? std::vector<double>(n, 0.0) : x0;
  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    report.converged = true;
    return std::vector<double>(n, 0.0);
  }
  const double target = std::fmax(rel_tol * bnorm, abs_tol);

  std::vector<double> r(n);
  if (norm2(x) == 0.0) {
    r = rhs;
  } else {
    op.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
  }
  double rnorm = norm2(r);
  report.residual_norm = rnorm;
  if (rnorm <= target) {
    report.converged = true;
    return x;
  }

  std::vector<std::vector<double>> v;
  std::vector<double> w(n);
  double prev_cycle = std::numeric_limits<double>::max();

  while (report.iterations < max_iters) {
    const int m = std::min(restart, max_iters - report.iterations);
    v.assign(1, r);
    for (double& value : v[0]) value /= rnorm;

    std::vector<double> h(static_cast<std::size_t>(m + 1) * m, 0.0);
    std::vector<double> cs(m), sn(m);
    std::vector<double> g(static_cast<std::size_t>(m) + 1, 0.0);
    g[0] = rnorm;

    int k = 0;
    double implicit = rnorm;
    for (int j = 0; j < m; ++j) {
      op.apply(v[static_cast<std::size_t>(j)], w);
      ++report.iterations;
      for (int i = 0; i <= j; ++i) {
        const double hij = dot(w, v[static_cast<std::size_t>(i)]);
        h[static_cast<std::size_t>(i) * m + j] = hij;
        const auto& vi = v[static_cast<std::size_t>(i)];
        for (std::size_t e = 0; e < n; ++e) w[e] -= hij * vi[e];
      }
      const double hnext = norm2(w);
      h[static_cast<std::size_t>(j + 1) * m + j] = hnext;

      // Apply accumulated rotations to the new column, then form the next one.
      for (int i = 0; i < j; ++i) {
        const double hi = h[static_cast<std::size_t>(i) * m + j];
        const double hi1 = h[static_cast<std::size_t>(i + 1) * m + j];
        h[static_cast<std::size_t>(i) * m + j] = cs[i] * hi + sn[i] * hi1;
        h[static_cast<std::size_t>(i + 1) * m + j] = -sn[i] * hi + cs[i] * hi1;
      }
      const double a = h[static_cast<std::size_t>(j) * m + j];
      const double b = h[static_cast<std::size_t>(j + 1) * m + j];
      const double rho = std::hypot(a, b);
      if (rho == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = a / rho;
        sn[j] = b / rho;
      }
      h[static_cast<std::size_t>(j) * m + j] = rho;
      h[static_cast<std::size_t>(j + 1) * m + j] = 0.0;
      g[static_cast<std::size_t>(j) + 1] = -sn[j] * g[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(j)] *= cs[j];

      k = j + 1;
      implicit = std::fabs(g[static_cast<std::size_t>(k)]);
      if (residual_history) residual_history->push_back(implicit);

      if (hnext <= 1e-14 * rnorm) break;  // subspace exhausted for this cycle
      v.emplace_back(w);
      for (double& value : v.back()) value /= hnext;
      if (implicit <= target) break;
    }

    // Back substitution on the rotated Hessenberg system, then update x.
    std::vector<double> y(static_cast<std::size_t>(k), 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double sum = g[static_cast<std::size_t>(i)];
      for (int j2 = i + 1; j2 < k; ++j2) sum -= h[static_cast<std::size_t>(i) * m + j2] * y[static_cast<std::size_t>(j2)];
      y[static_cast<std::size_t>(i)] = sum / h[static_cast<std::size_t>(i) * m + i];
    }
    for (int j = 0; j < k; ++j) {
      const auto& vj = v[static_cast<std::size_t>(j)];
      const double yj = y[static_cast<std::size_t>(j)];
      for (std::size_t e = 0; e < n; ++e) x[e] += yj * vj[e];
    }

    op.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    rnorm = norm2(r);
    report.residual_norm = rnorm;
    if (rnorm <= target) {
      report.converged = true;
      return x;
    }
    // A breakdown only exhausts the current cycle's subspace; restarting from
    // the (now small) residual keeps polishing. Stop once a cycle makes no
    // progress.
    if (rnorm >= prev_cycle * (1.0 - 1e-12)) break;
    prev_cycle = rnorm;
  }
  return x;
}

std::vector<double> jacobian_vector_product(const ResidualFn& residual,
                                            const std::vector<double>& x,
                                            const std::vector<double>& fx,
                                            const std::vector<double>& v) {
  const double vnorm = norm2(v);
  std::vector<double> out(x.size(), 0.0);
  if (vnorm == 0.0) return out;
  const double eps =
      std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm2(x)) / vnorm;
  std::vector<double> xp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xp[i] = x[i] + eps * v[i];
  residual(xp, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (out[i] - fx[i]) / eps;
  return out;
}

std::vector<double> jfnk_solve(const ResidualFn& residual, const std::vector<double>& x0,
                               const JfnkOptions& opts, SolveReport& report) {
  report = SolveReport{};
  std::vector<double> x = x0;
  std::vector<double> fx(x.size());
  residual(x, fx);
  double fnorm = norm2(fx);
  const double target = std::fmax(opts.newton_rel_tol * fnorm, opts.newton_abs_tol);
  report.residual_norm = fnorm;

  while (fnorm > target) {
    if (report.iterations >= opts.max_newton) {
      throw std::runtime_error("newton iteration cap (" + std::to_string(opts.max_newton) +
                               ") exceeded, residual " + std::to_string(fnorm));
    }
    LinearOperatorHandle jacobian{
        static_cast<int>(x.size()),
        [&residual, &x, &fx](const std::vector<double>& in, std::vector<double>& out) {
          out = jacobian_vector_product(residual, x, fx, in);
        }};
    std::vector<double> neg_f(fx.size());
    for (std::size_t i = 0; i < fx.size(); ++i) neg_f[i] = -fx[i];

    SolveReport inner;
    const std::vector<double> delta =
        gmres(jacobian, neg_f, {}, opts.krylov_rel_tol, 0.0, opts.krylov_restart,
              opts.krylov_max_iters, inner);
    report.inner_iterations += inner.iterations;

    for (std::size_t i = 0; i < x.size(); ++i) x[i] += delta[i];
    residual(x, fx);
    fnorm = norm2(fx);
    ++report.iterations;
    report.residual_norm = fnorm;
  }
  report.converged = true;
  return x;
}

}  // namespace swv
