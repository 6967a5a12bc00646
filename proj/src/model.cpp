#include "thcs/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "thcs/kernels.hpp"
#include "thcs/random_fields.hpp"
#include "thcs/spectral_ops.hpp"
#include "thcs/transform.hpp"

namespace thcs {

void ModelParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("model.nu must be positive");
  if (!(prandtl > 0.0) || !std::isfinite(prandtl)) {
    throw std::invalid_argument("model.prandtl must be positive");
  }
  if (!(n_squared > 0.0) || !std::isfinite(n_squared)) {
    throw std::invalid_argument("model.n_squared must be positive");
  }
}

State::State(SpectralField w, SpectralField r, double t)
    : omega(std::move(w)), rho(std::move(r)), time(t) {
  require_same_grid(omega.grid(), rho.grid());
}

void StepControl::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("stepping.dt must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument("stepping.cfl_safety must lie in (0, 1]");
  }
  if (!(max_velocity_floor > 0.0)) {
    throw std::invalid_argument("stepping.max_velocity_floor must be positive");
  }
}

double max_velocity(const State& state) {
  const SpectralField psi = inverse_laplacian(state.omega);
  const PhysicalField u = inverse_transform(partial_derivative(psi, Axis::z));
  const PhysicalField w = inverse_transform(partial_derivative(psi, Axis::x));
  const auto& k = kernels::active();
  return std::max(k.max_abs(u.values().data(), u.values().size()),
                  k.max_abs(w.values().data(), w.values().size()));
}

double cfl_time_step(const State& state, const StepControl& ctrl) {
  const double v = std::max(max_velocity(state), ctrl.max_velocity_floor);
  return ctrl.cfl_safety * state.grid().spacing() / v;
}

double energy(const State& state, const ModelParams& params) {
  const double grad_psi = sobolev_norm(inverse_laplacian(state.omega), 1.0);
  const double l2_rho = sobolev_norm(state.rho, 0.0);
  return params.n_squared * grad_psi * grad_psi + l2_rho * l2_rho;
}

State single_mode_state(const ModelParams& params, int kx, int kz, double energy) {
  if (!(energy >= 0.0)) throw std::invalid_argument("initial.energy must be nonnegative");
  const double k2 = static_cast<double>(kx * kx + kz * kz);
  const double psi_amp = std::sqrt(energy / (params.n_squared * kLambda1 * k2));
  const double rho_amp = std::sqrt(energy);
  const SpectralField psi = plane_wave(params.grid, kx, kz, psi_amp, 0.0);
  SpectralField rho = plane_wave(params.grid, kx, kz, rho_amp, -0.5 * kPi);
  return State(laplacian(psi), std::move(rho), 0.0);
}

State random_band_state(const ModelParams& params, std::uint64_t seed, double energy, int band) {
  if (!(energy >= 0.0)) throw std::invalid_argument("initial.energy must be nonnegative");
  std::mt19937_64 rng(seed);
  RandomBandOptions opts;
  opts.band = band;
  SpectralField psi = random_band_field(params.grid, rng, opts);
  SpectralField rho = random_band_field(params.grid, rng, opts);
  const double g = sobolev_norm(psi, 1.0);
  const double r = sobolev_norm(rho, 0.0);
  psi *= std::sqrt(0.5 * energy / params.n_squared) / g;
  rho *= std::sqrt(0.5 * energy) / r;
  return State(laplacian(psi), std::move(rho), 0.0);
}

}  // namespace thcs
