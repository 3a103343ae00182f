#include "swvlasov/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swv {

namespace {

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^(-1/4)

// Renormalization bounds for the scaled recurrence. Values are kept within
// [2^-500, 2^500] and the excess exponent is accumulated separately.
constexpr int kExpWindow = 500;
constexpr double kScaleDown = 0x1p-500;
constexpr double kScaleUp = 0x1p500;
constexpr double kUpperMag = 0x1p500;
constexpr double kLowerMag = 0x1p-500;

double apply_exponent(double mantissa, long exponent) {
  if (mantissa == 0.0) return 0.0;
  if (exponent > 2000) exponent = 2000;
  if (exponent < -2200) return 0.0;
  return std::ldexp(mantissa, static_cast<int>(exponent));
}

// log of the basis normalization gamma_n = (sqrt(pi) 2^n n!)^(-1/2).
double log_gamma_basis(int n) {
  return -0.5 * (0.5 * std::log(std::numbers::pi) + n * std::numbers::ln2 +
                 std::lgamma(n + 1.0));
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

void HermiteParams::validate() const {
  if (!std::isfinite(u) || !std::isfinite(alpha)) {
    throw std::invalid_argument("hermite parameters must be finite");
  }
  if (alpha <= 0.0) {
    throw std::invalid_argument("hermite scale alpha must be positive, got " +
                                std::to_string(alpha));
  }
  if (n_modes < 1) {
    throw std::invalid_argument("hermite mode count must be at least 1, got " +
                                std::to_string(n_modes));
  }
}

double eval_basis(int n, double v, const HermiteParams& params) {
  params.validate();
  if (n < 0 || n >= params.n_modes) {
    throw std::invalid_argument("basis index " + std::to_string(n) +
                                " outside [0, " + std::to_string(params.n_modes) + ")");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument("basis evaluation velocity must be finite");
  }

  const double xi = (v - params.u) / params.alpha;

  // Seed psi_0 = pi^(-1/4) exp(-xi^2/2) with the Gaussian split into a
  // power-of-two exponent and a fractional part so large |xi| cannot
  // underflow before the recurrence has a chance to grow.
  const double log2_gauss = -0.5 * xi * xi / std::numbers::ln2;
  long exponent = static_cast<long>(std::floor(log2_gauss));
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp2(log2_gauss - static_cast<double>(exponent));

  for (int m = 0; m < n; ++m) {
    const double next = xi * std::sqrt(2.0 / (m + 1)) * cur -
                        std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::fmax(std::fabs(cur), std::fabs(prev));
    if (mag > kUpperMag) {
      cur *= kScaleDown;
      prev *= kScaleDown;
      exponent += kExpWindow;
    } else if (mag != 0.0 && mag < kLowerMag) {
      cur *= kScaleUp;
      prev *= kScaleUp;
      exponent -= kExpWindow;
    }
  }
  return apply_exponent(cur, exponent);
}

void eval_basis_row(double v, const HermiteParams& params, double* out) {
  params.validate();
  if (!std::isfinite(v)) {
    throw std::invalid_argument("basis evaluation velocity must be finite");
  }
  const double xi = (v - params.u) / params.alpha;
  const double log2_gauss = -0.5 * xi * xi / std::numbers::ln2;
  long exponent = static_cast<long>(std::floor(log2_gauss));
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp2(log2_gauss - static_cast<double>(exponent));

  out[0] = apply_exponent(cur, exponent);
  for (int m = 0; m + 1 < params.n_modes; ++m) {
    const double next = xi * std::sqrt(2.0 / (m + 1)) * cur -
                        std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::fmax(std::fabs(cur), std::fabs(prev));
    if (mag > kUpperMag) {
      cur *= kScaleDown;
      prev *= kScaleDown;
      exponent += kExpWindow;
    } else if (mag != 0.0 && mag < kLowerMag) {
      cur *= kScaleUp;
      prev *= kScaleUp;
      exponent -= kExpWindow;
    }
    out[m + 1] = apply_exponent(cur, exponent);
  }
}

std::vector<double> eval_basis_row(double v, const HermiteParams& params) {
  params.validate();
  std::vector<double> out(static_cast<std::size_t>(params.n_modes));
  eval_basis_row(v, params, out.data());
  return out;
}

MomentTables moment_tables(const HermiteParams& params) {
  params.validate();
  const int n_modes = params.n_modes;
  const double u = params.u;
  const double alpha = params.alpha;

  // Zeroth-moment recursion, extended two indices past the last mode so the
  // first/second moments of mode n_modes-1 are defined.
  std::vector<double> ext(static_cast<std::size_t>(n_modes) + 2, 0.0);
  ext[0] = std::sqrt(2.0) * std::pow(std::numbers::pi, 0.25);
  if (ext.size() > 2) {
    for (std::size_t n = 2; n < ext.size(); n += 2) {
      ext[n] = std::sqrt((n - 1.0) / n) * ext[n - 2];
    }
  }
  auto I_at = [&ext](int n) { return n < 0 ? 0.0 : ext[static_cast<std::size_t>(n)]; };

  MomentTables tables;
  tables.I.assign(ext.begin(), ext.begin() + n_modes);
  tables.I1.resize(n_modes);
  tables.I2.resize(n_modes);
  for (int n = 0; n < n_modes; ++n) {
    // First and second moments follow from v = u + alpha*xi and the ladder
    // identities; odd-index I entries are zero, which collapses these to the
    // separate even/odd forms.
    const double ladder = std::sqrt((n + 1) / 2.0) * I_at(n + 1) +
                          std::sqrt(n / 2.0) * I_at(n - 1);
    tables.I1[n] = alpha * ladder + u * I_at(n);
    tables.I2[n] = alpha * alpha *
                       (0.5 * std::sqrt((n + 1.0) * (n + 2.0)) * I_at(n + 2) +
                        0.5 * std::sqrt(n * (n - 1.0)) * I_at(n - 2) +
                        0.5 * (2.0 * n + 1.0) * I_at(n)) +
                   u * u * I_at(n) + 2.0 * alpha * u * ladder;
  }
  return tables;
}

double triple_product(int n, int k, int m) {
  if (n < 0 || k < 0 || m < 0) {
    throw std::invalid_argument("triple product indices must be non-negative");
  }
  if ((n + k + m) % 2 != 0) return 0.0;  // odd integrand

  // Closed form: sqrt(2/3) g_n g_k g_m sum_r R_{k,n,r} sum_q P_{k+n-2r,q}(L)
  // sum_l P_{m,l}(L) delta_{k+n-2r-2q, m-2l} / g_{m-2l}^2 with L = sqrt(2/3).
  // Every factor is positive except (L^2-1)^p = (-1/3)^p, so the term sign is
  // (-1)^(q+l) and magnitudes can be accumulated in log space.
  const double log_lambda = 0.5 * std::log(2.0 / 3.0);
  const double log_third = -std::log(3.0);
  const double base = 0.5 * std::log(2.0 / 3.0) + log_gamma_basis(n) +
                      log_gamma_basis(k) + log_gamma_basis(m);

  double sum = 0.0;
  double comp = 0.0;  // Kahan correction
  for (int r = 0; r <= std::min(n, k); ++r) {
    const double log_R = r * std::numbers::ln2 + std::lgamma(r + 1.0) +
                         log_binomial(k, r) + log_binomial(n, r);
    const int nn = k + n - 2 * r;
    for (int q = 0; q <= nn / 2; ++q) {
      const int residual = nn - 2 * q;  // must equal m - 2l
      const int twice_l = m - residual;
      if (twice_l < 0 || twice_l % 2 != 0) continue;
      const int l = twice_l / 2;
      const double log_P1 = (nn - 2 * q) * log_lambda + q * log_third +
                            log_binomial(nn, 2 * q) + std::lgamma(2.0 * q + 1.0) -
                            std::lgamma(q + 1.0);
      const double log_P2 = (m - 2 * l) * log_lambda + l * log_third +
                            log_binomial(m, 2 * l) + std::lgamma(2.0 * l + 1.0) -
                            std::lgamma(l + 1.0);
      const double log_mag =
          base + log_R + log_P1 + log_P2 - 2.0 * log_gamma_basis(residual);
      const double term = (((q + l) % 2 == 0) ? 1.0 : -1.0) * std::exp(log_mag);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

}  // namespace swv
