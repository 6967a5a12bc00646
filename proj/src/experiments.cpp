#include "thcs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thcs/parallel.hpp"
#include "thcs/spectral_ops.hpp"

namespace thcs {

const std::vector<std::string>& decay_fit_names() {
  static const std::vector<std::string> names{"energy", "h1_psi", "h2_psi", "h3_psi", "l2_rho", "h1_rho"};
  return names;
}

namespace {

DecayFitOutcome fit_with_fallback(const std::vector<std::pair<double, double>>& series,
                                  const FitWindow& window) {
  DecayFitOutcome out;
  const bool all_zero = std::all_of(series.begin(), series.end(), [](const auto& p) { return p.second == 0.0; });
  if (all_zero) {
    out.status = "degenerate-zero";
    return out;
  }
  double t_hi = window.t_hi;
  // Underflow to zero inside the window: stop the window just before it.
  for (const auto& [t, v] : series) {
    if (t >= window.t_lo && t <= t_hi && !(v > 0.0)) {
      double last_good = window.t_lo;
      for (const auto& [t2, v2] : series) {
        if (t2 >= t) break;
        last_good = t2;
      }
      t_hi = last_good;
      break;
    }
  }
  try {
    out.fit = fit_decay_rate(series, window.t_lo, t_hi);
    out.status = t_hi < window.t_hi ? "ok (window shortened)" : "ok";
  } catch (const std::invalid_argument& e) {
    out.status = std::string("failed: ") + e.what();
  }
  return out;
}

}  // namespace

DecayExperimentReport run_decay_experiment(const ModelParams& params, const State& initial,
                                           const StepControl& ctrl, double t_end, int sample_every) {
  DecayExperimentReport report;
  report.params = params;
  report.t_end = t_end;
  report.certificate = derive_certificate(params, initial);

  const ForcingSpec unforced(params.grid);
  SimulationResult sim = simulate(initial, params, unforced, ctrl, t_end, sample_every);
  report.dt = sim.dt;
  report.steps = sim.steps;
  report.records = std::move(sim.records);

  report.window = default_fit_window(report.records);
  for (const auto& name : decay_fit_names()) {
    report.fits[name] = fit_with_fallback(series_of(report.records, name), report.window);
  }

  const double e0 = report.records.front().energy;
  const double t0 = report.records.front().time;
  const double beta = report.certificate.beta_rigorous;
  const double alpha = report.certificate.alpha;
  report.envelope_ok = true;
  report.paper_alpha_ok = true;
  report.paper_alpha_integral_ok = true;
  double dissipated = 0.0;  // int_0^t nu (...) = half the integrated dissipation
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    if (i > 0) {
      const auto& p = report.records[i - 1];
      dissipated += 0.25 * (r.time - p.time) * (r.dissipation + p.dissipation);
    }
    const double t = r.time - t0;
    if (e0 > 0.0) {
      const double ratio = r.energy / (e0 * std::exp(-beta * t));
      report.max_envelope_ratio = std::max(report.max_envelope_ratio, ratio);
    }
    if (r.energy > e0 * std::exp(-beta * t) * (1.0 + kEnvelopeSlack)) report.envelope_ok = false;
    if (r.energy > e0 * std::exp(-alpha * t) * (1.0 + kEnvelopeSlack)) report.paper_alpha_ok = false;
    if (r.energy + dissipated > e0 * std::exp(-alpha * t) * (1.0 + kEnvelopeSlack)) {
      report.paper_alpha_integral_ok = false;
    }
  }
  return report;
}

double difference_norm(const State& a, const State& b, const ModelParams& params) {
  require_same_grid(a.grid(), b.grid());
  if (a.time != b.time) {
    throw std::invalid_argument("difference_norm: states at different times " + std::to_string(a.time) +
                                " and " + std::to_string(b.time));
  }
  return fractional_operator_norm(a.omega - b.omega, 0.5, params.nu) +
         fractional_operator_norm(a.rho - b.rho, 0.5, params.nu);
}

double averaging_time_step(const ForcingSpec& spec, const std::vector<double>& eta_values,
                           const StepControl& ctrl) {
  double dt = ctrl.dt;
  if (!eta_values.empty()) {
    const double eta_max = *std::max_element(eta_values.begin(), eta_values.end());
    const double rate = spec.with_eta(eta_max).max_rate();
    if (rate > 0.0) dt = std::min(dt, (kTwoPi / rate) / 20.0);
  }
  return dt;
}

AveragingExperimentReport run_averaging_experiment(const ModelParams& params, const State& initial,
                                                   const ForcingSpec& spec,
                                                   const std::vector<double>& eta_values,
                                                   double horizon_T, const StepControl& ctrl,
                                                   unsigned threads) {
  params.validate();
  ctrl.validate();
  if (eta_values.empty()) throw std::invalid_argument("averaging needs at least one eta");
  if (!(horizon_T > 0.0)) throw std::invalid_argument("averaging horizon must be positive");
  std::vector<double> etas = eta_values;
  std::sort(etas.begin(), etas.end());
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] >= 1.0)) throw std::invalid_argument("eta values must be >= 1");
    if (i > 0 && etas[i] == etas[i - 1]) throw std::invalid_argument("eta values must be distinct");
  }

  AveragingExperimentReport report;
  report.params = params;
  report.eta_values = etas;
  report.horizon_T = horizon_T;
  const double dt_cap = averaging_time_step(spec, etas, ctrl);
  const std::size_t steps = step_count(0.0, horizon_T, dt_cap);
  const double h = horizon_T / static_cast<double>(steps);
  report.dt = h;

  State start = initial;
  start.time = 0.0;
  const ForcingSpec averaged = averaged_spec(spec);
  const ImexIntegrator integrator(params, h);

  std::vector<AveragingRun> runs(etas.size());
  std::vector<double> magnitudes(etas.size(), 0.0);
  parallel_for(etas.size(), worker_count(threads), [&](std::size_t i) {
    AveragingRun run;
    run.eta = etas[i];
    const ForcingSpec forced = spec.with_eta(etas[i]);
    State a = start;
    State b = start;
    double sup = 0.0;
    double magnitude = fractional_operator_norm(a.omega, 0.5, params.nu) +
                       fractional_operator_norm(a.rho, 0.5, params.nu);
    try {
      for (std::size_t n = 1; n <= steps; ++n) {
        a = integrator.step(a, forced);
        b = integrator.step(b, averaged);
        const double t = n == steps ? horizon_T : static_cast<double>(n) * h;
        a.time = t;
        b.time = t;
        sup = std::max(sup, difference_norm(a, b, params));
        magnitude = std::max(magnitude, fractional_operator_norm(a.omega, 0.5, params.nu) +
                                            fractional_operator_norm(a.rho, 0.5, params.nu));
      }
      run.sup_error = sup;
    } catch (const DivergenceError& e) {
      run.diverged = true;
      run.error = e.what();
      run.sup_error = std::numeric_limits<double>::quiet_NaN();
    }
    runs[i] = run;
    magnitudes[i] = magnitude;
  });

  report.runs = runs;
  for (const auto& r : runs) report.sup_errors.push_back(r.sup_error);
  report.state_magnitude = *std::max_element(magnitudes.begin(), magnitudes.end());

  report.monotone = true;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (!(report.sup_errors[i] < report.sup_errors[i - 1])) report.monotone = false;
  }
  const bool fittable = runs.size() >= 2 && std::all_of(report.sup_errors.begin(), report.sup_errors.end(),
                                                        [](double e) { return e > 0.0 && std::isfinite(e); });
  if (fittable) {
    const double n = static_cast<double>(runs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      mx += std::log(1.0 / etas[i]);
      my += std::log(report.sup_errors[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const double x = std::log(1.0 / etas[i]) - mx;
      sxy += x * (std::log(report.sup_errors[i]) - my);
      sxx += x * x;
    }
    report.fitted_order = sxy / sxx;
  }
  return report;
}

}  // namespace thcs
