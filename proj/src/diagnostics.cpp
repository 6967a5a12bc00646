#include "thcs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thcs/spectral_ops.hpp"

namespace thcs {

DiagnosticsRecord record(const State& state, const ModelParams& params) {
  const SpectralField psi = inverse_laplacian(state.omega);
  DiagnosticsRecord r;
  r.time = state.time;
  r.l2_omega = sobolev_norm(state.omega, 0.0);
  r.h1_omega = sobolev_norm(state.omega, 1.0);
  r.l2_rho = sobolev_norm(state.rho, 0.0);
  r.h1_rho = sobolev_norm(state.rho, 1.0);
  r.h1_psi = sobolev_norm(psi, 1.0);
  r.h2_psi = sobolev_norm(psi, 2.0);
  r.h3_psi = sobolev_norm(psi, 3.0);
  r.energy = params.n_squared * r.h1_psi * r.h1_psi + r.l2_rho * r.l2_rho;
  r.dissipation = 2.0 * params.nu *
                  (params.n_squared * r.h2_psi * r.h2_psi + r.h1_rho * r.h1_rho / params.prandtl);
  r.frac_half_omega = fractional_operator_norm(state.omega, 0.5, params.nu);
  r.frac_half_rho = fractional_operator_norm(state.rho, 0.5, params.nu);
  return r;
}

const std::vector<std::string>& diagnostic_names() {
  static const std::vector<std::string> names{
      "l2_omega", "h1_omega", "l2_rho",      "h1_rho",          "h1_psi",       "h2_psi",
      "h3_psi",   "energy",   "dissipation", "frac_half_omega", "frac_half_rho"};
  return names;
}

namespace {

double field_of(const DiagnosticsRecord& r, const std::string& name) {
  if (name == "l2_omega") return r.l2_omega;
  if (name == "h1_omega") return r.h1_omega;
  if (name == "l2_rho") return r.l2_rho;
  if (name == "h1_rho") return r.h1_rho;
  if (name == "h1_psi") return r.h1_psi;
  if (name == "h2_psi") return r.h2_psi;
  if (name == "h3_psi") return r.h3_psi;
  if (name == "energy") return r.energy;
  if (name == "dissipation") return r.dissipation;
  if (name == "frac_half_omega") return r.frac_half_omega;
  if (name == "frac_half_rho") return r.frac_half_rho;
  throw std::invalid_argument("unknown diagnostic '" + name + "'");
}

}  // namespace

std::vector<std::pair<double, double>> series_of(const std::vector<DiagnosticsRecord>& records,
                                                 const std::string& name) {
  std::vector<std::pair<double, double>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.emplace_back(r.time, field_of(r, name));
  return out;
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series, double t_lo,
                        double t_hi) {
  if (!(t_hi > t_lo)) throw std::invalid_argument("fit window must satisfy t_hi > t_lo");
  std::vector<double> ts, ys;
  for (const auto& [t, v] : series) {
    if (t < t_lo || t > t_hi) continue;
    if (!(v > 0.0)) {
      throw std::invalid_argument("nonpositive value " + std::to_string(v) + " at t=" +
                                  std::to_string(t) + " inside fit window");
    }
    ts.push_back(t);
    ys.push_back(std::log(v));
  }
  if (ts.size() < kMinFitSamples) {
    throw std::invalid_argument("fit window holds " + std::to_string(ts.size()) +
                                " samples, need at least " + std::to_string(kMinFitSamples));
  }
  const double n = static_cast<double>(ts.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    my += ys[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    sty += (ts[i] - mt) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sty / stt;
  DecayFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.rate = -slope;
  fit.intercept = my - slope * mt;
  fit.samples = ts.size();
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double e = ys[i] - (fit.intercept + slope * ts[i]);
      sse += e * e;
    }
    fit.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
  }
  return fit;
}

FitWindow default_fit_window(const std::vector<DiagnosticsRecord>& records) {
  FitWindow w;
  if (records.empty()) return w;
  const double threshold = 1e-2 * records.front().energy;
  std::size_t first = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].energy < threshold) {
      first = i;
      break;
    }
  }
  w.transient_cleared = first < records.size();
  if (!w.transient_cleared) first = 0;
  const std::size_t begin = first + (records.size() - first) / 2;
  w.t_lo = records[std::min(begin, records.size() - 1)].time;
  w.t_hi = records.back().time;
  return w;
}

double lemma_a1() noexcept { return std::sqrt(1.0 + kLambda1 + kLambda1 * kLambda1); }

double lemma_a2() noexcept {
  return std::pow(1.0 / (4.0 * kPi * kPi) + std::sqrt(2.0) / kPi + 2.0, 0.25);
}

DecayCertificate derive_certificate(const ModelParams& params, const State& initial,
                                    const CertificateOptions& options) {
  params.validate();
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(options.delta) || !in_unit(options.delta2) || !in_unit(options.delta3)) {
    throw std::invalid_argument("certificate deltas must lie in (0, 1)");
  }
  DecayCertificate c;
  const double lam = kLambda1;
  const double nu = params.nu;
  const double pr = params.prandtl;
  const double m = std::min(1.0, 1.0 / pr);
  c.lambda1 = lam;
  c.alpha = nu / lam * m;
  c.beta_rigorous = 2.0 * nu * lam * m;
  c.a1 = lemma_a1();
  c.a1_sharp = std::sqrt(1.0 + 1.0 / lam + 1.0 / (lam * lam));
  c.a2 = lemma_a2();
  c.delta = options.delta;
  c.delta2 = options.delta2;
  c.delta3 = options.delta3;

  const double a1_4 = std::pow(c.a1, 4);
  const double a2_4 = std::pow(c.a2, 4);
  const double coupling = a1_4 * a2_4 * (6.0 + 2.0 * std::sqrt(2.0));
  c.nu_threshold =
      std::sqrt(coupling * pr * pr * lam / (4.0 * options.delta2 * (1.0 - options.delta2)));
  c.pr_threshold_holds = nu >= c.nu_threshold;
  c.alpha2 = std::min(options.delta3, params.n_squared * nu / lam);

  c.delta1 = c.alpha - (1.0 - options.delta) * nu / lam;
  c.delta1_feasible = c.delta1 > 0.0;
  if (c.delta1_feasible) {
    const SpectralField psi0 = inverse_laplacian(initial.omega);
    const double lap_psi = sobolev_norm(psi0, 2.0);
    const double e0 = energy(initial, params);
    c.phi0 = lap_psi * lap_psi +
             lam / (4.0 * options.delta * (1.0 - options.delta) * c.delta1 * nu * nu) * e0;
    const double arg = coupling * lam * pr * pr * c.phi0 / (nu * nu);
    if (arg > 0.0) {
      c.t1 = std::max(0.0, lam / ((1.0 - options.delta) * nu) * std::log(arg));
    } else {
      c.t1 = 0.0;
    }
    c.flags.emplace_back("t1 takes the undefined prefactor a = 1");
  } else {
    c.flags.emplace_back("paper-constant infeasible: delta1 <= 0 for the chosen delta");
  }
  return c;
}

}  // namespace thcs
