// Semi-discrete Vlasov-Poisson system on the periodic grid with a Hermite
// velocity expansion per species. The state carries the coefficient blocks
// C_n^s at every grid point (mode-major per species); the advection
// right-hand side is
//
//   dC_n/dt = -D [ alpha sqrt(n/2) C_{n-1} + alpha sqrt((n+1)/2) C_{n+1} + u C_n ]
//             + (q/(m alpha)) E .* [ sqrt(n/2) C_{n-1} - sqrt((n+1)/2) C_{n+1} ],
//
// with C_{-1} = C_{N_v} = 0 (closure by truncation). This operator is
// anti-symmetric for any fixed zero-mean E, which is what the discrete
// conservation statements rest on. The two formulations (plain expansion of f
// versus expansion of sqrt(f)) share this advection verbatim; they differ
// only in the charge density feeding the Poisson solve, which is linear in
// the coefficients for the former and quadratic for the latter.

#pragma once

#include <string>
#include <vector>

#include "swvlasov/grid.hpp"
#include "swvlasov/hermite.hpp"

namespace swv {

enum class Formulation { kSw, kSwSqrt };

struct SpeciesConfig {
  std::string name;
  double charge = -1.0;  // elementary-charge units
  double mass = 1.0;     // electron-mass units
  HermiteParams hermite;
  bool static_background = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct FieldVector {
  std::vector<double> values;  // electric field at grid points, zero mean
};

// Immutable problem description plus the derived bookkeeping used to address
// the flat state vector: one contiguous block per dynamic species, mode-major
// inside the block (all grid values of C_0, then C_1, ...).
class VlasovSystem {
 public:
  VlasovSystem(const GridConfig& grid, Formulation formulation,
               std::vector<SpeciesConfig> species, bool field_enabled = true);

  const GridConfig& grid() const { return grid_; }
  const DerivativeOperator& derivative() const { return deriv_; }
  Formulation formulation() const { return formulation_; }
  bool field_enabled() const { return field_enabled_; }
  const std::vector<SpeciesConfig>& species() const { return species_; }
  const std::vector<int>& dynamic_species() const { return dynamic_; }
  const MomentTables& moments(int species_index) const;

  int state_size() const { return state_size_; }
  // Offset of dynamic species s (index into species()) in the flat state.
  int block_offset(int species_index) const;
  // Pointer to C_n of the given dynamic species inside a flat state vector.
  const double* mode(const std::vector<double>& state, int species_index, int n) const;
  double* mode(std::vector<double>& state, int species_index, int n) const;

 private:
  GridConfig grid_;
  DerivativeOperator deriv_;
  Formulation formulation_;
  bool field_enabled_;
  std::vector<SpeciesConfig> species_;
  std::vector<MomentTables> moments_;
  std::vector<int> dynamic_;
  std::vector<int> offsets_;  // aligned with species_, -1 for static entries
  int state_size_ = 0;
};

// Charge density of the dynamic species; any static-background species
// contributes the uniform density that makes the grid mean vanish.
std::vector<double> charge_density(const VlasovSystem& system, const std::vector<double>& state);

// Electric field from the density: the projected singular solve of
// D E = rho at tolerance 1e-15. Requires |mean(rho)| <= 1e-10 (neutrality).
FieldVector solve_poisson(const VlasovSystem& system, const std::vector<double>& rho);

// The advection + field coupling above, written into increment (resized).
// The field is held fixed; the result is linear in the state.
void advection_rhs(const VlasovSystem& system, const std::vector<double>& state,
                   const FieldVector& field, std::vector<double>& increment);

// Full right-hand side: solve Poisson from the state (zero field when fields
// are disabled), then advect.
void system_rhs(const VlasovSystem& system, const std::vector<double>& state,
                std::vector<double>& increment);
FieldVector system_field(const VlasovSystem& system, const std::vector<double>& state);

// Distribution function of one dynamic species at grid column x_index,
// sampled at the given velocities: the Hermite sum for the plain formulation,
// its square for the square-root formulation.
std::vector<double> reconstruct_distribution(const VlasovSystem& system,
                                             const std::vector<double>& state, int species_index,
                                             int x_index, const std::vector<double>& v_samples);

}  // namespace swv
