#pragma once

#include <cstdint>

#include "thcs/spectral_field.hpp"

namespace thcs {

/// Physical parameters of the vorticity-density system.
struct ModelParams {
  double nu = 0.05;        ///< viscosity
  double prandtl = 1.0;    ///< density diffusivity is nu / prandtl
  double n_squared = 1.0;  ///< mean buoyancy frequency squared
  WaveGrid grid{128};

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  double density_diffusivity() const noexcept { return nu / prandtl; }
};

/// (omega, rho) at time `time`; psi is recovered as inverse_laplacian(omega).
struct State {
  SpectralField omega;
  SpectralField rho;
  double time = 0.0;

  explicit State(const WaveGrid& grid) : omega(grid), rho(grid) {}
  State(SpectralField w, SpectralField r, double t);

  const WaveGrid& grid() const noexcept { return omega.grid(); }
};

struct StepControl {
  double dt = 1e-3;
  double cfl_safety = 0.5;
  double max_velocity_floor = 1e-8;

  void validate() const;
};

/// max(|u|, |w|) over collocation points, (u, w) = (psi_z, -psi_x).
double max_velocity(const State& state);

/// cfl_safety * h / max(max_velocity, floor).
double cfl_time_step(const State& state, const StepControl& ctrl);

/// psi = a cos(2 pi k.x), rho = b sin(2 pi k.x) with the energy split evenly
/// between N^2 ||grad psi||^2 and ||rho||^2. Both fields depend on k.x only,
/// so every Jacobian vanishes along the trajectory.
State single_mode_state(const ModelParams& params, int kx, int kz, double energy);

/// Band-limited random psi and rho from a seeded generator, scaled so that
/// N^2 ||grad psi||^2 = ||rho||^2 = energy / 2.
State random_band_state(const ModelParams& params, std::uint64_t seed, double energy, int band = 4);

/// N^2 ||grad psi||^2 + ||rho||^2.
double energy(const State& state, const ModelParams& params);

}  // namespace thcs
