#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "thcs/diagnostics.hpp"
#include "thcs/forcing.hpp"
#include "thcs/model.hpp"

namespace thcs {

/// Non-finite coefficients appeared; `time()` is the end of the failed step.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised by simulate(): the divergence plus every record sampled before it.
class SimulationDiverged : public DivergenceError {
 public:
  SimulationDiverged(double time, std::vector<DiagnosticsRecord> partial)
      : DivergenceError(time), partial_(std::move(partial)) {}
  const std::vector<DiagnosticsRecord>& partial_records() const noexcept { return partial_; }

 private:
  std::vector<DiagnosticsRecord> partial_;
};

/// d(omega)/dt = -J(omega, psi) + rho_x + nu lap omega + f, psi = lap^-1 omega.
SpectralField vorticity_rhs(const State& state, const ModelParams& params, const SpectralField& f);

/// d(rho)/dt = -J(rho, psi) - N^2 psi_x + (nu / Pr) lap rho.
SpectralField density_rhs(const State& state, const ModelParams& params);

/// The non-diffusive part of both right-hand sides, sharing psi derivatives.
struct Tendencies {
  SpectralField omega;
  SpectralField rho;
};
Tendencies explicit_tendencies(const State& state, const ModelParams& params, const SpectralField& f);

/// Integrating-factor Heun (IF-RK2). Diffusion is propagated exactly per mode
/// by exp(-nu |k|^2 4 pi^2 dt) (resp. nu / Pr); everything else is explicit:
///
///   k1 = N(q_n, t_n)
///   q* = E (q_n + dt k1)
///   k2 = N(q*, t_n + dt)
///   q_{n+1} = E (q_n + dt/2 k1) + dt/2 k2
class ImexIntegrator {
 public:
  ImexIntegrator(ModelParams params, double dt);

  /// Throws DivergenceError if any coefficient of the result is non-finite.
  State step(const State& state, const ForcingSpec& forcing) const;

  double dt() const noexcept { return dt_; }
  const ModelParams& params() const noexcept { return params_; }

 private:
  ModelParams params_;
  double dt_;
  AlignedVector<double> decay_omega_;
  AlignedVector<double> decay_rho_;
};

/// One step with ctrl.dt. The CFL bound is not enforced here; see cfl_time_step.
State step(const State& state, const ModelParams& params, const ForcingSpec& forcing,
           const StepControl& ctrl);

struct SimulationHooks {
  /// Called with each sampled state (including the initial and final ones).
  std::function<void(const State&, const DiagnosticsRecord&)> on_sample;
};

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  State final_state;
  std::size_t steps = 0;
  /// Step actually used: (t_end - t0) / steps, the largest such value <= ctrl.dt.
  double dt = 0.0;
};

/// Number of uniform steps covering [t0, t_end] with step <= dt.
std::size_t step_count(double t0, double t_end, double dt);

/// Deterministic trajectory from `initial` to t_end. Diagnostics are recorded at
/// the start, every `sample_every` steps, and at t_end. Throws
/// SimulationDiverged (carrying the partial records) on divergence.
SimulationResult simulate(const State& initial, const ModelParams& params, const ForcingSpec& forcing,
                          const StepControl& ctrl, double t_end, int sample_every,
                          const SimulationHooks& hooks = {});

}  // namespace thcs
