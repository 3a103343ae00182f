// Tests for the matrix-free solvers: GMRES against a dense LU oracle on
// random systems, report/counter semantics, and the Newton-Krylov wrapper on
// problems with known roots.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "swvlasov/krylov.hpp"

namespace {

double norm2(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

// Row-major flat n x n matrix wrapped as an operator callback.
swv::LinearOperatorHandle dense_operator(const std::vector<double>& a, int n) {
  return swv::LinearOperatorHandle{n, [a](const std::vector<double>& in, std::vector<double>& out) {
                                     out = oracle::mat_vec(a, in);
                                   }};
}

}  // namespace

TEST_CASE("gmres solves the identity in one iteration") {
  swv::LinearOperatorHandle op{3, [](const std::vector<double>& in, std::vector<double>& out) {
                                 out = in;
                               }};
  swv::SolveReport report;
  const std::vector<double> rhs{1.0, -2.0, 0.5};
  const auto x = swv::gmres(op, rhs, {}, 1e-12, 0.0, 10, 100, report);
  CHECK(report.converged);
  CHECK(report.iterations == 1);
  for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
}

TEST_CASE("gmres solves a diagonal system exactly") {
  const std::vector<double> a{1, 0, 0, 0, 2, 0, 0, 0, 4};
  swv::SolveReport report;
  const auto x = swv::gmres(dense_operator(a, 3), {1.0, 1.0, 1.0}, {}, 1e-13, 0.0, 10, 100, report);
  CHECK(report.converged);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("gmres returns zero immediately for a zero right-hand side") {
  const std::vector<double> a{3, 1, -1, 2};
  swv::SolveReport report;
  const auto x = swv::gmres(dense_operator(a, 2), {0.0, 0.0}, {}, 1e-12, 0.0, 5, 50, report);
  CHECK(report.converged);
  CHECK(report.iterations == 0);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
}

TEST_CASE("gmres with restarts matches a dense solve on a shifted antisymmetric system") {
  const int n = 50;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i] = 3.0;
    for (int j = i + 1; j < n; ++j) {
      const double entry = unif(rng);
      a[static_cast<std::size_t>(i) * n + j] = entry;
      a[static_cast<std::size_t>(j) * n + i] = -entry;
    }
  }
  std::vector<double> rhs(n);
  for (double& value : rhs) value = unif(rng);

  const auto exact = oracle::solve_dense(a, rhs);
  swv::SolveReport report;
  const auto x = swv::gmres(dense_operator(a, n), rhs, {}, 1e-12, 0.0, 30, 2000, report);
  CHECK(report.converged);
  double diff = 0.0;
  for (int i = 0; i < n; ++i) diff += (x[i] - exact[i]) * (x[i] - exact[i]);
  CHECK(std::sqrt(diff) <= 1e-8 * norm2(exact));
}

TEST_CASE("gmres residual history is monotone within a cycle") {
  const int n = 40;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i] = 4.0;
    for (int j = 0; j < n; ++j)
      if (j != i) a[static_cast<std::size_t>(i) * n + j] = 0.3 * unif(rng);
  }
  std::vector<double> rhs(n);
  for (double& value : rhs) value = unif(rng);

  swv::SolveReport report;
  std::vector<double> history;
  swv::gmres(dense_operator(a, n), rhs, {}, 1e-12, 0.0, n, 4 * n, report, &history);
  CHECK(report.converged);
  REQUIRE(history.size() >= 2);
  for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("gmres reports non-convergence when the iteration budget is too small") {
  const int n = 30;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i] = 2.0 + 0.1 * i;
    for (int j = i + 1; j < n; ++j) {
      const double entry = unif(rng);
      a[static_cast<std::size_t>(i) * n + j] = entry;
      a[static_cast<std::size_t>(j) * n + i] = -entry;
    }
  }
  std::vector<double> rhs(n);
  for (double& value : rhs) value = unif(rng);

  swv::SolveReport report;
  swv::gmres(dense_operator(a, n), rhs, {}, 1e-14, 0.0, 3, 3, report);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations == 3);
  CHECK(report.residual_norm > 0.0);
}

TEST_CASE("gmres honors a nonzero initial guess") {
  const std::vector<double> a{2, 1, 1, 3};
  const std::vector<double> rhs{5.0, 10.0};
  const auto exact = oracle::solve_dense(a, rhs);
  swv::SolveReport report;
  const auto x = swv::gmres(dense_operator(a, 2), rhs, exact, 1e-12, 0.0, 5, 50, report);
  CHECK(report.converged);
  CHECK(report.iterations == 0);
  CHECK(x[0] == doctest::Approx(exact[0]).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(exact[1]).epsilon(1e-12));
}

TEST_CASE("jacobian-vector product matches the analytic Jacobian of a quadratic map") {
  // F(x) = (x0^2 + x1, x0 x1) has J = [[2 x0, 1], [x1, x0]].
  const swv::ResidualFn residual = [](const std::vector<double>& x, std::vector<double>& out) {
    out.resize(2);
    out[0] = x[0] * x[0] + x[1];
    out[1] = x[0] * x[1];
  };
  const std::vector<double> x{1.5, -0.5};
  std::vector<double> fx;
  residual(x, fx);
  const std::vector<double> v{0.7, 0.2};
  const auto jv = swv::jacobian_vector_product(residual, x, fx, v);
  const double expected0 = 2.0 * x[0] * v[0] + v[1];
  const double expected1 = x[1] * v[0] + x[0] * v[1];
  CHECK(jv[0] == doctest::Approx(expected0).epsilon(1e-6));
  CHECK(jv[1] == doctest::Approx(expected1).epsilon(1e-6));
}

TEST_CASE("newton-krylov solves a linear residual in one step") {
  const swv::ResidualFn residual = [](const std::vector<double>& x, std::vector<double>& out) {
    out.resize(2);
    out[0] = x[0] - 3.0;
    out[1] = x[1] + 2.0;
  };
  swv::SolveReport report;
  swv::JfnkOptions opts;
  const auto x = swv::jfnk_solve(residual, {0.0, 0.0}, opts, report);
  CHECK(report.converged);
  CHECK(report.iterations == 1);
  CHECK(report.inner_iterations >= 1);
  CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(x[1] == doctest::Approx(-2.0).epsilon(1e-7));
}

TEST_CASE("newton-krylov finds the root of a scalar quadratic") {
  const swv::ResidualFn residual = [](const std::vector<double>& x, std::vector<double>& out) {
    out.resize(1);
    out[0] = x[0] * x[0] - 4.0;
  };
  swv::SolveReport report;
  swv::JfnkOptions opts;
  const auto x = swv::jfnk_solve(residual, {3.0}, opts, report);
  CHECK(report.converged);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(report.iterations >= 2);
}

TEST_CASE("newton-krylov takes no steps when the guess already satisfies the residual") {
  const swv::ResidualFn residual = [](const std::vector<double>& x, std::vector<double>& out) {
    out.resize(1);
    out[0] = x[0] - 1.0;
  };
  swv::SolveReport report;
  swv::JfnkOptions opts;
  const auto x = swv::jfnk_solve(residual, {1.0}, opts, report);
  CHECK(report.converged);
  CHECK(report.iterations == 0);
  CHECK(x[0] == 1.0);
}

TEST_CASE("newton-krylov throws when the residual has no root") {
  const swv::ResidualFn residual = [](const std::vector<double>& x, std::vector<double>& out) {
    out.resize(1);
    out[0] = x[0] * x[0] + 1.0;
  };
  swv::SolveReport report;
  swv::JfnkOptions opts;
  opts.max_newton = 20;
  CHECK_THROWS_AS(swv::jfnk_solve(residual, {0.5}, opts, report), std::runtime_error);
}
