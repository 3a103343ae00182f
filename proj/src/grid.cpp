#include "swvlasov/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "swvlasov/krylov.hpp"

namespace swv {

namespace {

// Central-difference half stencils c_1..c_{p/2} before the 1/dx scaling.
const std::vector<double>& raw_half_stencil(int order) {
  static const std::vector<double> p2{1.0 / 2.0};
  static const std::vector<double> p4{2.0 / 3.0, -1.0 / 12.0};
  static const std::vector<double> p6{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static const std::vector<double> p8{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  switch (order) {
    case 2: return p2;
    case 4: return p4;
    case 6: return p6;
    case 8: return p8;
    default:
      throw std::invalid_argument("order must be one of 2,4,6,8, got " + std::to_string(order));
  }
}

void remove_mean(std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

// For even N the alternating vector (-1)^i is also annihilated by every
// centered antisymmetric stencil; remove that component too.
void remove_alternating(std::vector<double>& x) {
  if (x.size() % 2 != 0) return;
  double comp = 0.0;
  double sign = 1.0;
  for (double v : x) {
    comp += sign * v;
    sign = -sign;
  }
  comp /= static_cast<double>(x.size());
  sign = 1.0;
  for (double& v : x) {
    v -= sign * comp;
    sign = -sign;
  }
}

}  // namespace

void GridConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid length must be positive and finite, got " +
                                std::to_string(length));
  }
  if (n_points < 4) {
    throw std::invalid_argument("grid n_points must be at least 4, got " +
                                std::to_string(n_points));
  }
  raw_half_stencil(order);
  if (n_points <= order) {
    throw std::invalid_argument("grid n_points must exceed the stencil order, got n_points " +
                                std::to_string(n_points) + " with order " + std::to_string(order));
  }
}

DerivativeOperator::DerivativeOperator(const GridConfig& grid) : grid_(grid) {
  grid_.validate();
  half_ = raw_half_stencil(grid_.order);
  const double inv_dx = 1.0 / grid_.dx();
  for (double& c : half_) c *= inv_dx;
}

std::vector<double> DerivativeOperator::first_row() const {
  std::vector<double> row(static_cast<std::size_t>(grid_.n_points), 0.0);
  const int n = grid_.n_points;
  for (std::size_t r = 0; r < half_.size(); ++r) {
    row[r + 1] = half_[r];
    row[static_cast<std::size_t>(n) - 1 - r] = -half_[r];
  }
  return row;
}

void DerivativeOperator::apply(const std::vector<double>& in, std::vector<double>& out) const {
  const int n = grid_.n_points;
  if (static_cast<int>(in.size()) != n) {
    throw std::invalid_argument("derivative input length " + std::to_string(in.size()) +
                                " does not match grid n_points " + std::to_string(n));
  }
  const int h = static_cast<int>(half_.size());
  // Periodic halo copy keeps the inner loop branch-free and makes in-place
  // application safe.
  thread_local std::vector<double> halo;
  halo.resize(static_cast<std::size_t>(n + 2 * h));
  for (int i = 0; i < h; ++i) halo[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(n - h + i)];
  for (int i = 0; i < n; ++i) halo[static_cast<std::size_t>(h + i)] = in[static_cast<std::size_t>(i)];
  for (int i = 0; i < h; ++i) halo[static_cast<std::size_t>(h + n + i)] = in[static_cast<std::size_t>(i)];

  out.resize(static_cast<std::size_t>(n));
  const double* c = half_.data();
  const double* mid = halo.data() + h;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int r = 1; r <= h; ++r) acc += c[r - 1] * (mid[i + r] - mid[i - r]);
    out[static_cast<std::size_t>(i)] = acc;
  }
}

std::vector<double> DerivativeOperator::apply(const std::vector<double>& in) const {
  std::vector<double> out;
  apply(in, out);
  return out;
}

double trapezoid(const std::vector<double>& field, const GridConfig& grid) {
  if (static_cast<int>(field.size()) != grid.n_points) {
    throw std::invalid_argument("trapezoid input length " + std::to_string(field.size()) +
                                " does not match grid n_points " + std::to_string(grid.n_points));
  }
  double sum = 0.0;
  for (double v : field) sum += v;
  return grid.dx() * sum;
}

std::vector<double> solve_singular(const DerivativeOperator& op, const std::vector<double>& rhs,
                                   double tol) {
  const int n = op.grid().n_points;
  if (static_cast<int>(rhs.size()) != n) {
    throw std::invalid_argument("solve_singular rhs length " + std::to_string(rhs.size()) +
                                " does not match grid n_points " + std::to_string(n));
  }

  std::vector<double> b = rhs;
  remove_mean(b);
  remove_alternating(b);

  // D commutes with the null-space projector (both are circulant), so
  // projecting each operator application keeps the Krylov space inside the
  // range of D and the solve acts as the pseudoinverse there.
  LinearOperatorHandle projected{n, [&op](const std::vector<double>& in, std::vector<double>& out) {
                                   op.apply(in, out);
                                   remove_mean(out);
                                   remove_alternating(out);
                                 }};

  SolveReport report;
  std::vector<double> x = gmres(projected, b, {}, tol, tol, n, 10 * n, report);
  if (!report.converged) {
    throw std::runtime_error("singular derivative solve did not converge: residual " +
                             std::to_string(report.residual_norm) + " after " +
                             std::to_string(report.iterations) + " iterations (tol " +
                             std::to_string(tol) + ")");
  }
  remove_mean(x);
  remove_alternating(x);
  return x;
}

}  // namespace swv
