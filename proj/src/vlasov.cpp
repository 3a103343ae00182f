#include "swvlasov/vlasov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swv {

void SpeciesConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("species mass must be positive and finite, got " +
                                std::to_string(mass));
  }
  if (!std::isfinite(charge)) {
    throw std::invalid_argument("species charge must be finite");
  }
  hermite.validate();
}

VlasovSystem::VlasovSystem(const GridConfig& grid, Formulation formulation,
                           std::vector<SpeciesConfig> species, bool field_enabled)
    : grid_(grid),
      deriv_(grid),
      formulation_(formulation),
      field_enabled_(field_enabled),
      species_(std::move(species)) {
  if (species_.empty()) throw std::invalid_argument("system needs at least one species");
  moments_.reserve(species_.size());
  offsets_.assign(species_.size(), -1);
  for (std::size_t s = 0; s < species_.size(); ++s) {
    species_[s].validate();
    moments_.push_back(moment_tables(species_[s].hermite));
    if (!species_[s].static_background) {
      dynamic_.push_back(static_cast<int>(s));
      offsets_[s] = state_size_;
      state_size_ += species_[s].hermite.n_modes * grid_.n_points;
    }
  }
  if (dynamic_.empty()) throw std::invalid_argument("system needs at least one dynamic species");
}

const MomentTables& VlasovSystem::moments(int species_index) const {
  return moments_.at(static_cast<std::size_t>(species_index));
}

int VlasovSystem::block_offset(int species_index) const {
  const int offset = offsets_.at(static_cast<std::size_t>(species_index));
  if (offset < 0) {
    throw std::invalid_argument("species " + species_.at(static_cast<std::size_t>(species_index)).name +
                                " is a static background and carries no state");
  }
  return offset;
}

const double* VlasovSystem::mode(const std::vector<double>& state, int species_index, int n) const {
  return state.data() + block_offset(species_index) + static_cast<std::ptrdiff_t>(n) * grid_.n_points;
}

double* VlasovSystem::mode(std::vector<double>& state, int species_index, int n) const {
  return state.data() + block_offset(species_index) + static_cast<std::ptrdiff_t>(n) * grid_.n_points;
}

namespace {

void require_state_size(const VlasovSystem& system, const std::vector<double>& state) {
  if (static_cast<int>(state.size()) != system.state_size()) {
    throw std::invalid_argument("state length " + std::to_string(state.size()) +
                                " does not match system size " +
                                std::to_string(system.state_size()));
  }
}

}  // namespace

std::vector<double> charge_density(const VlasovSystem& system, const std::vector<double>& state) {
  require_state_size(system, state);
  const int nx = system.grid().n_points;
  std::vector<double> rho(static_cast<std::size_t>(nx), 0.0);
  bool neutralize = false;
  for (const SpeciesConfig& sp : system.species())
    if (sp.static_background) neutralize = true;

  for (int s : system.dynamic_species()) {
    const SpeciesConfig& sp = system.species()[static_cast<std::size_t>(s)];
    const double qa = sp.charge * sp.hermite.alpha;
    const int nv = sp.hermite.n_modes;
    if (system.formulation() == Formulation::kSw) {
      const std::vector<double>& I = system.moments(s).I;
      for (int n = 0; n < nv; ++n) {
        if (I[static_cast<std::size_t>(n)] == 0.0) continue;
        const double weight = qa * I[static_cast<std::size_t>(n)];
        const double* c = system.mode(state, s, n);
        for (int j = 0; j < nx; ++j) rho[static_cast<std::size_t>(j)] += weight * c[j];
      }
    } else {
      for (int n = 0; n < nv; ++n) {
        const double* c = system.mode(state, s, n);
        for (int j = 0; j < nx; ++j) rho[static_cast<std::size_t>(j)] += qa * c[j] * c[j];
      }
    }
  }

  if (neutralize) {
    double mean = 0.0;
    for (double v : rho) mean += v;
    mean /= nx;
    for (double& v : rho) v -= mean;
  }
  return rho;
}

FieldVector solve_poisson(const VlasovSystem& system, const std::vector<double>& rho) {
  const int nx = system.grid().n_points;
  if (static_cast<int>(rho.size()) != nx) {
    throw std::invalid_argument("density length " + std::to_string(rho.size()) +
                                " does not match grid n_points " + std::to_string(nx));
  }
  double mean = 0.0;
  for (double v : rho) mean += v;
  mean /= nx;
  if (std::fabs(mean) > 1e-10) {
    throw std::runtime_error("charge density mean " + std::to_string(mean) +
                             " violates neutrality; check species charges and backgrounds");
  }
  return FieldVector{solve_singular(system.derivative(), rho, 1e-15)};
}

void advection_rhs(const VlasovSystem& system, const std::vector<double>& state,
                   const FieldVector& field, std::vector<double>& increment) {
  require_state_size(system, state);
  const int nx = system.grid().n_points;
  if (static_cast<int>(field.values.size()) != nx) {
    throw std::invalid_argument("field length " + std::to_string(field.values.size()) +
                                " does not match grid n_points " + std::to_string(nx));
  }
  increment.assign(state.size(), 0.0);
  const double* e = field.values.data();

  for (int s : system.dynamic_species()) {
    const SpeciesConfig& sp = system.species()[static_cast<std::size_t>(s)];
    const double u = sp.hermite.u;
    const double alpha = sp.hermite.alpha;
    const double accel = sp.charge / (sp.mass * alpha);
    const int nv = sp.hermite.n_modes;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int n = 0; n < nv; ++n) {
      // Each mode writes only its own block, so the loop is safe to split.
      thread_local std::vector<double> flux;
      flux.assign(static_cast<std::size_t>(nx), 0.0);
      const double low = std::sqrt(0.5 * n);          // couples to C_{n-1}
      const double high = std::sqrt(0.5 * (n + 1));   // couples to C_{n+1}

      const double* c_n = system.mode(state, s, n);
      for (int j = 0; j < nx; ++j) flux[static_cast<std::size_t>(j)] = u * c_n[j];
      if (n > 0) {
        const double* c_lo = system.mode(state, s, n - 1);
        const double w = alpha * low;
        for (int j = 0; j < nx; ++j) flux[static_cast<std::size_t>(j)] += w * c_lo[j];
      }
      if (n + 1 < nv) {
        const double* c_hi = system.mode(state, s, n + 1);
        const double w = alpha * high;
        for (int j = 0; j < nx; ++j) flux[static_cast<std::size_t>(j)] += w * c_hi[j];
      }

      thread_local std::vector<double> dflux;
      system.derivative().apply(flux, dflux);

      double* out = increment.data() + system.block_offset(s) +
                    static_cast<std::ptrdiff_t>(n) * nx;
      for (int j = 0; j < nx; ++j) out[j] = -dflux[static_cast<std::size_t>(j)];
      if (n > 0) {
        const double* c_lo = system.mode(state, s, n - 1);
        const double w = accel * low;
        for (int j = 0; j < nx; ++j) out[j] += w * e[j] * c_lo[j];
      }
      if (n + 1 < nv) {
        const double* c_hi = system.mode(state, s, n + 1);
        const double w = accel * high;
        for (int j = 0; j < nx; ++j) out[j] -= w * e[j] * c_hi[j];
      }
    }
  }
}

FieldVector system_field(const VlasovSystem& system, const std::vector<double>& state) {
  if (!system.field_enabled()) {
    return FieldVector{std::vector<double>(static_cast<std::size_t>(system.grid().n_points), 0.0)};
  }
  return solve_poisson(system, charge_density(system, state));
}

void system_rhs(const VlasovSystem& system, const std::vector<double>& state,
                std::vector<double>& increment) {
  const FieldVector field = system_field(system, state);
  advection_rhs(system, state, field, increment);
}

std::vector<double> reconstruct_distribution(const VlasovSystem& system,
                                             const std::vector<double>& state, int species_index,
                                             int x_index, const std::vector<double>& v_samples) {
  require_state_size(system, state);
  if (x_index < 0 || x_index >= system.grid().n_points) {
    throw std::invalid_argument("grid index " + std::to_string(x_index) + " out of range");
  }
  const SpeciesConfig& sp = system.species().at(static_cast<std::size_t>(species_index));
  const int nv = sp.hermite.n_modes;
  const int nx = system.grid().n_points;

  std::vector<double> basis(static_cast<std::size_t>(nv));
  std::vector<double> out(v_samples.size(), 0.0);
  for (std::size_t i = 0; i < v_samples.size(); ++i) {
    eval_basis_row(v_samples[i], sp.hermite, basis.data());
    const double* block = state.data() + system.block_offset(species_index);
    double sum = 0.0;
    for (int n = 0; n < nv; ++n)
      sum += block[static_cast<std::ptrdiff_t>(n) * nx + x_index] * basis[static_cast<std::size_t>(n)];
    out[i] = system.formulation() == Formulation::kSwSqrt ? sum * sum : sum;
  }
  return out;
}

}  // namespace swv
