// Symmetrically-weighted Hermite basis functions
//
//   psi_n(xi) = (sqrt(pi) 2^n n!)^{-1/2} H_n(xi) exp(-xi^2/2),   xi = (v - u)/alpha,
//
// evaluated by the normalized three-term recurrence (never raw H_n times the
// Gaussian, which overflows near n ~ 150), plus the velocity-moment tables
// and basis triple products the solver's conservation formulas need.

#pragma once

#include <vector>

namespace swv {

// Velocity shift u and scale alpha of the basis argument, and the number of
// retained modes N_v.
struct HermiteParams {
  double u = 0.0;
  double alpha = 1.0;
  int n_modes = 1;

  // Throws std::invalid_argument when alpha <= 0, n_modes < 1, or a value is
  // not finite.
  void validate() const;
};

// Moments of the basis functions over the scaled velocity coordinate,
// each array of length n_modes:
//   I[n]  = integral of psi_n(xi) dxi
//   I1[n] = integral of v psi_n(xi) dxi
//   I2[n] = integral of v^2 psi_n(xi) dxi
// The zeroth-moment recursion is extended internally past n_modes-1 so the
// last I1/I2 entries are well defined.
struct MomentTables {
  std::vector<double> I;
  std::vector<double> I1;
  std::vector<double> I2;
};

// psi_n at velocity v. Finite for n up to at least 10^4 and |xi| up to 40;
// the recurrence carries a separate power-of-two exponent so the Gaussian
// seed cannot underflow the growth region away.
double eval_basis(int n, double v, const HermiteParams& params);

// All n_modes basis values at one velocity in a single recurrence pass.
std::vector<double> eval_basis_row(double v, const HermiteParams& params);

// Allocation-free variant; out must hold params.n_modes values.
void eval_basis_row(double v, const HermiteParams& params, double* out);

MomentTables moment_tables(const HermiteParams& params);

// M_{n,k,m} = integral of psi_n psi_k psi_m dxi via the closed-form
// linearization/scaling expansion; factorials and binomials are combined in
// log space with the sign tracked separately.
double triple_product(int n, int k, int m);

}  // namespace swv
