// Periodic uniform spatial grid with circulant central-difference derivative
// operators of order p in {2, 4, 6, 8}. The operator D acts as
//   (D x)_i = sum_{r=1}^{p/2} c_r (x_{i+r} - x_{i-r}) / dx   (indices mod N_x),
// is exactly anti-symmetric (<x, D x> = 0), annihilates constants, and for
// even N_x also annihilates the alternating vector (-1)^i. The singular solve
// returns the zero-mean minimum-norm least-squares solution of D x = rhs, the
// action of the Moore-Penrose pseudoinverse on zero-mean data.

#pragma once

#include <vector>

namespace swv {

struct GridConfig {
  double length = 0.0;  // domain size in Debye lengths
  int n_points = 0;     // N_x
  int order = 2;        // finite-difference order p, one of 2, 4, 6, 8

  double dx() const { return length / n_points; }
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

class DerivativeOperator {
 public:
  explicit DerivativeOperator(const GridConfig& grid);

  const GridConfig& grid() const { return grid_; }
  // Half-stencil weights already divided by dx; coefficient r (1-based)
  // multiplies x_{i+r} - x_{i-r}.
  const std::vector<double>& half_stencil() const { return half_; }
  // First row of the circulant matrix D[i][j] = row[(j - i) mod N_x].
  std::vector<double> first_row() const;

  // out = D in; safe when &in == &out. Throws on length mismatch.
  void apply(const std::vector<double>& in, std::vector<double>& out) const;
  std::vector<double> apply(const std::vector<double>& in) const;

 private:
  GridConfig grid_;
  std::vector<double> half_;
};

// Rectangle rule on the periodic grid: dx * sum(field).
double trapezoid(const std::vector<double>& field, const GridConfig& grid);

// Zero-mean least-squares solution of D x = rhs. The right-hand side is first
// projected onto the range of D (mean removed; for even N_x the alternating
// component as well), then solved by restarted GMRES confined to that
// subspace, and the output is projected to zero mean. Throws
// std::runtime_error carrying the final residual when the iteration cap
// (10 N_x operator applications) does not reach tol.
std::vector<double> solve_singular(const DerivativeOperator& op, const std::vector<double>& rhs,
                                   double tol);

}  // namespace swv
