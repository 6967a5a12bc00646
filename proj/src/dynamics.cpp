#include "thcs/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thcs/kernels.hpp"
#include "thcs/spectral_ops.hpp"
#include "thcs/transform.hpp"

namespace thcs {
namespace {

std::string divergence_message(double t) {
  std::ostringstream os;
  os.precision(17);
  os << "simulation diverged at t=" << t;
  return os.str();
}

double* raw(AlignedVector<Complex>& v) { return reinterpret_cast<double*>(v.data()); }

AlignedVector<Complex> copy_of(const SpectralField& s) {
  return AlignedVector<Complex>(s.coefficients().begin(), s.coefficients().end());
}

bool finite(const SpectralField& s) {
  return kernels::active().all_finite(kernels::as_doubles(s.coefficients()),
                                      2 * s.coefficients().size());
}

}  // namespace

DivergenceError::DivergenceError(double time) : Error(divergence_message(time)), time_(time) {}

SpectralField vorticity_rhs(const State& state, const ModelParams& params, const SpectralField& f) {
  require_same_grid(state.grid(), params.grid);
  require_same_grid(state.grid(), f.grid());
  const SpectralField psi = inverse_laplacian(state.omega);
  return -jacobian(state.omega, psi) + partial_derivative(state.rho, Axis::x) +
         params.nu * laplacian(state.omega) + f;
}

SpectralField density_rhs(const State& state, const ModelParams& params) {
  require_same_grid(state.grid(), params.grid);
  const SpectralField psi = inverse_laplacian(state.omega);
  return -jacobian(state.rho, psi) - params.n_squared * partial_derivative(psi, Axis::x) +
         params.density_diffusivity() * laplacian(state.rho);
}

Tendencies explicit_tendencies(const State& state, const ModelParams& params, const SpectralField& f) {
  const WaveGrid& grid = state.grid();
  require_same_grid(grid, params.grid);
  require_same_grid(grid, f.grid());
  const auto& k = kernels::active();

  const SpectralField psi = inverse_laplacian(state.omega);
  const SpectralField psi_x = partial_derivative(psi, Axis::x);
  const SpectralField rho_x = partial_derivative(state.rho, Axis::x);

  const PhysicalField px = inverse_transform(psi_x);
  const PhysicalField pz = inverse_transform(partial_derivative(psi, Axis::z));
  const PhysicalField wx = inverse_transform(partial_derivative(state.omega, Axis::x));
  const PhysicalField wz = inverse_transform(partial_derivative(state.omega, Axis::z));
  const PhysicalField rx = inverse_transform(rho_x);
  const PhysicalField rz = inverse_transform(partial_derivative(state.rho, Axis::z));

  const std::size_t n = grid.physical_size();
  PhysicalField prod(grid);
  k.cross_difference(wx.values().data(), pz.values().data(), wz.values().data(), px.values().data(),
                     prod.values().data(), n);
  const SpectralField j_omega = forward_transform(prod);
  k.cross_difference(rx.values().data(), pz.values().data(), rz.values().data(), px.values().data(),
                     prod.values().data(), n);
  const SpectralField j_rho = forward_transform(prod);

  const std::size_t nd = 2 * grid.spectral_size();
  AlignedVector<Complex> w = copy_of(f);
  k.axpy(-1.0, kernels::as_doubles(j_omega.coefficients()), raw(w), nd);
  k.axpy(1.0, kernels::as_doubles(rho_x.coefficients()), raw(w), nd);

  AlignedVector<Complex> r(grid.spectral_size());
  k.axpy(-1.0, kernels::as_doubles(j_rho.coefficients()), raw(r), nd);
  k.axpy(-params.n_squared, kernels::as_doubles(psi_x.coefficients()), raw(r), nd);

  return {SpectralField(grid, std::move(w)), SpectralField(grid, std::move(r))};
}

ImexIntegrator::ImexIntegrator(ModelParams params, double dt) : params_(std::move(params)), dt_(dt) {
  params_.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  const auto eig = params_.grid.laplacian_eigenvalue();
  const auto mask = params_.grid.mask();
  decay_omega_.resize(eig.size());
  decay_rho_.resize(eig.size());
  const double kappa = params_.density_diffusivity();
  for (std::size_t i = 0; i < eig.size(); ++i) {
    decay_omega_[i] = mask[i] * std::exp(-params_.nu * eig[i] * dt);
    decay_rho_[i] = mask[i] * std::exp(-kappa * eig[i] * dt);
  }
}

State ImexIntegrator::step(const State& state, const ForcingSpec& forcing) const {
  const WaveGrid& grid = state.grid();
  require_same_grid(grid, params_.grid);
  require_same_grid(grid, forcing.grid());
  const auto& k = kernels::active();
  const std::size_t nc = grid.spectral_size();
  const double t0 = state.time;
  const double h = dt_;

  const Tendencies k1 = explicit_tendencies(state, params_, evaluate_forcing(forcing, t0));

  AlignedVector<Complex> w_stage(nc), r_stage(nc);
  k.propagate(kernels::as_doubles(state.omega.coefficients()), kernels::as_doubles(k1.omega.coefficients()),
              decay_omega_.data(), h, raw(w_stage), nc);
  k.propagate(kernels::as_doubles(state.rho.coefficients()), kernels::as_doubles(k1.rho.coefficients()),
              decay_rho_.data(), h, raw(r_stage), nc);
  const State stage(SpectralField(grid, std::move(w_stage)), SpectralField(grid, std::move(r_stage)),
                    t0 + h);

  const Tendencies k2 = explicit_tendencies(stage, params_, evaluate_forcing(forcing, t0 + h));

  AlignedVector<Complex> w_next(nc), r_next(nc);
  k.propagate_combine(kernels::as_doubles(state.omega.coefficients()),
                      kernels::as_doubles(k1.omega.coefficients()),
                      kernels::as_doubles(k2.omega.coefficients()), decay_omega_.data(), 0.5 * h,
                      raw(w_next), nc);
  k.propagate_combine(kernels::as_doubles(state.rho.coefficients()),
                      kernels::as_doubles(k1.rho.coefficients()),
                      kernels::as_doubles(k2.rho.coefficients()), decay_rho_.data(), 0.5 * h,
                      raw(r_next), nc);
  State next(SpectralField(grid, std::move(w_next)), SpectralField(grid, std::move(r_next)), t0 + h);
  if (!finite(next.omega) || !finite(next.rho)) throw DivergenceError(next.time);
  return next;
}

State step(const State& state, const ModelParams& params, const ForcingSpec& forcing,
           const StepControl& ctrl) {
  ctrl.validate();
  return ImexIntegrator(params, ctrl.dt).step(state, forcing);
}

std::size_t step_count(double t0, double t_end, double dt) {
  const double span = t_end - t0;
  // Tolerate round-off when span is an integer multiple of dt.
  const double ratio = span / dt;
  const double nearest = std::round(ratio);
  const double steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(ratio);
  return static_cast<std::size_t>(std::max(1.0, steps));
}

SimulationResult simulate(const State& initial, const ModelParams& params, const ForcingSpec& forcing,
                          const StepControl& ctrl, double t_end, int sample_every,
                          const SimulationHooks& hooks) {
  ctrl.validate();
  if (!(t_end > initial.time)) throw std::invalid_argument("t_end must exceed the initial time");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");

  const double t0 = initial.time;
  const std::size_t steps = step_count(t0, t_end, ctrl.dt);
  const double h = (t_end - t0) / static_cast<double>(steps);
  const ImexIntegrator integrator(params, h);

  std::vector<DiagnosticsRecord> records;
  records.reserve(steps / static_cast<std::size_t>(sample_every) + 2);
  auto sample = [&](const State& s) {
    records.push_back(record(s, params));
    if (hooks.on_sample) hooks.on_sample(s, records.back());
  };

  State state = initial;
  sample(state);
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      state = integrator.step(state, forcing);
    } catch (const DivergenceError& e) {
      throw SimulationDiverged(e.time(), std::move(records));
    }
    state.time = n == steps ? t_end : t0 + static_cast<double>(n) * h;
    if (n % static_cast<std::size_t>(sample_every) == 0 || n == steps) sample(state);
  }
  return {std::move(records), std::move(state), steps, h};
}

}  // namespace thcs
