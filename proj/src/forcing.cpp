#include "thcs/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thcs/kernels.hpp"
#include "thcs/spectral_ops.hpp"

namespace thcs {
namespace {

double cosine_window_average(double rate, double phase, double t0, double window) {
  return (std::sin(rate * (t0 + window) + phase) - std::sin(rate * t0 + phase)) / (rate * window);
}

double sine_window_average(double rate, double phase, double t0, double window) {
  return -(std::cos(rate * (t0 + window) + phase) - std::cos(rate * t0 + phase)) / (rate * window);
}

void accumulate(SpectralField& into, double weight, const SpectralField& field) {
  auto& k = kernels::active();
  AlignedVector<Complex> coeffs(into.coefficients().begin(), into.coefficients().end());
  k.axpy(weight, kernels::as_doubles(field.coefficients()), reinterpret_cast<double*>(coeffs.data()),
         2 * coeffs.size());
  into = SpectralField(into.grid(), std::move(coeffs));
}

// <A^gamma a, A^gamma b> with A = -nu Laplacian.
double fractional_inner(const SpectralField& a, const SpectralField& b, double gamma, double nu) {
  const auto eig = a.grid().laplacian_eigenvalue();
  const auto mult = a.grid().multiplicity();
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  double sum = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (mult[i] == 0.0) continue;
    const double w = mult[i] * std::pow(nu * eig[i], 2.0 * gamma);
    sum += w * (ca[i].real() * cb[i].real() + ca[i].imag() * cb[i].imag());
  }
  return sum;
}

}  // namespace

void TemporalWaveform::validate() const {
  switch (kind) {
    case WaveformKind::constant:
      return;
    case WaveformKind::cosine:
    case WaveformKind::sine:
      if (!(frequency > 0.0)) throw std::invalid_argument("waveform.frequency must be positive");
      return;
    case WaveformKind::finite_series:
      if (terms.empty()) throw std::invalid_argument("waveform.terms must be nonempty");
      for (const auto& t : terms) {
        if (!(t.frequency > 0.0)) throw std::invalid_argument("waveform.terms frequency must be positive");
      }
      return;
  }
}

double TemporalWaveform::value(double eta, double t) const {
  switch (kind) {
    case WaveformKind::constant:
      return 1.0;
    case WaveformKind::cosine:
      return std::cos(eta * frequency * t + phase);
    case WaveformKind::sine:
      return std::sin(eta * frequency * t + phase);
    case WaveformKind::finite_series: {
      double v = 0.0;
      for (const auto& term : terms) v += term.amplitude * std::cos(eta * term.frequency * t + term.phase);
      return v;
    }
  }
  return 0.0;
}

double TemporalWaveform::window_average(double eta, double t0, double window) const {
  switch (kind) {
    case WaveformKind::constant:
      return 1.0;
    case WaveformKind::cosine:
      return cosine_window_average(eta * frequency, phase, t0, window);
    case WaveformKind::sine:
      return sine_window_average(eta * frequency, phase, t0, window);
    case WaveformKind::finite_series: {
      double v = 0.0;
      for (const auto& term : terms) {
        v += term.amplitude * cosine_window_average(eta * term.frequency, term.phase, t0, window);
      }
      return v;
    }
  }
  return 0.0;
}

double TemporalWaveform::min_rate(double eta) const noexcept {
  switch (kind) {
    case WaveformKind::constant:
      return 0.0;
    case WaveformKind::cosine:
    case WaveformKind::sine:
      return eta * frequency;
    case WaveformKind::finite_series: {
      double r = std::numeric_limits<double>::infinity();
      for (const auto& t : terms) r = std::min(r, eta * t.frequency);
      return r;
    }
  }
  return 0.0;
}

double TemporalWaveform::max_rate(double eta) const noexcept {
  switch (kind) {
    case WaveformKind::constant:
      return 0.0;
    case WaveformKind::cosine:
    case WaveformKind::sine:
      return eta * frequency;
    case WaveformKind::finite_series: {
      double r = 0.0;
      for (const auto& t : terms) r = std::max(r, eta * t.frequency);
      return r;
    }
  }
  return 0.0;
}

ForcingSpec::ForcingSpec(WaveGrid grid, double eta) : grid_(std::move(grid)), eta_(eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("forcing.eta must be positive");
}

ForcingSpec& ForcingSpec::add(SpectralField spatial, TemporalWaveform waveform) {
  require_same_grid(grid_, spatial.grid());
  waveform.validate();
  components_.push_back({std::move(spatial), std::move(waveform)});
  return *this;
}

ForcingSpec ForcingSpec::with_eta(double eta) const {
  ForcingSpec out(grid_, eta);
  out.components_ = components_;
  return out;
}

bool ForcingSpec::oscillatory() const noexcept {
  return std::any_of(components_.begin(), components_.end(),
                     [](const ForcingComponent& c) { return c.waveform.oscillatory(); });
}

double ForcingSpec::max_rate() const noexcept {
  double r = 0.0;
  for (const auto& c : components_) r = std::max(r, c.waveform.max_rate(eta_));
  return r;
}

SpectralField evaluate_forcing(const ForcingSpec& spec, double t) {
  SpectralField f(spec.grid());
  for (const auto& c : spec.components()) accumulate(f, c.waveform.value(spec.eta(), t), c.spatial);
  return f;
}

SpectralField time_average(const ForcingSpec& spec) {
  SpectralField f(spec.grid());
  for (const auto& c : spec.components()) {
    if (!c.waveform.oscillatory()) accumulate(f, c.waveform.mean(), c.spatial);
  }
  return f;
}

ForcingSpec averaged_spec(const ForcingSpec& spec) {
  ForcingSpec out(spec.grid(), spec.eta());
  if (!spec.empty()) out.add(time_average(spec), TemporalWaveform::constant());
  return out;
}

double average_defect(const ForcingSpec& spec, double t_start, double window, double gamma,
                      double nu) {
  if (!(window > 0.0)) throw std::invalid_argument("averaging window must be positive");
  SpectralField d(spec.grid());
  for (const auto& c : spec.components()) {
    const double w = c.waveform.window_average(spec.eta(), t_start, window) - c.waveform.mean();
    if (w != 0.0) accumulate(d, w, c.spatial);
  }
  return fractional_operator_norm(d, gamma, nu);
}

AveragingAssumptionReport assumption_report(const ForcingSpec& spec, double gamma, double nu,
                                            const std::vector<double>& windows, double t_start) {
  if (windows.empty()) throw std::invalid_argument("assumption_report needs at least one window");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (!(windows[i] > 0.0) || (i > 0 && !(windows[i] > windows[i - 1]))) {
      throw std::invalid_argument("averaging windows must be positive and strictly increasing");
    }
  }
  AveragingAssumptionReport report;
  report.gamma = gamma;
  report.nu = nu;
  report.t_start = t_start;
  report.windows = windows;
  for (double T : windows) report.defects.push_back(average_defect(spec, t_start, T, gamma, nu));

  // Oscillatory components and their Gram matrix under the A^gamma pairing.
  std::vector<const ForcingComponent*> osc;
  for (const auto& c : spec.components()) {
    if (c.waveform.oscillatory()) osc.push_back(&c);
  }
  report.sigma.assign(windows.size(), 0.0);
  if (!osc.empty()) {
    const std::size_t m = osc.size();
    std::vector<double> gram(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        gram[i * m + j] = gram[j * m + i] = fractional_inner(osc[i]->spatial, osc[j]->spatial, gamma, nu);
      }
    }
    double slow = std::numeric_limits<double>::infinity();
    double fast = 0.0;
    for (const auto* c : osc) {
      slow = std::min(slow, c->waveform.min_rate(spec.eta()));
      fast = std::max(fast, c->waveform.max_rate(spec.eta()));
    }
    const double period = kTwoPi / slow;
    const double h = (kTwoPi / fast) / 64.0;
    const std::size_t start_samples = std::min<std::size_t>(4096, static_cast<std::size_t>(std::ceil(period / h)));
    const std::size_t window_samples =
        std::min<std::size_t>(8192, static_cast<std::size_t>(std::ceil(2.0 * period / h)));
    std::vector<double> a(m);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      double sup = 0.0;
      for (std::size_t s = 0; s < start_samples; ++s) {
        const double t0 = period * static_cast<double>(s) / static_cast<double>(start_samples);
        for (std::size_t q = 0; q <= window_samples; ++q) {
          const double T = windows[w] + 2.0 * period * static_cast<double>(q) / static_cast<double>(window_samples);
          for (std::size_t i = 0; i < m; ++i) a[i] = osc[i]->waveform.window_average(spec.eta(), t0, T);
          double norm2 = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) norm2 += a[i] * gram[i * m + j] * a[j];
          }
          sup = std::max(sup, norm2);
        }
      }
      report.sigma[w] = std::sqrt(sup);
    }
    for (std::size_t w = windows.size() - 1; w > 0; --w) {
      report.sigma[w - 1] = std::max(report.sigma[w - 1], report.sigma[w]);
    }
  }
  report.m_gamma = *std::max_element(report.sigma.begin(), report.sigma.end());
  report.m_gamma = std::max(report.m_gamma,
                            *std::max_element(report.defects.begin(), report.defects.end()));

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (report.sigma[i] > 0.0) {
      lx.push_back(std::log(windows[i]));
      ly.push_back(std::log(report.sigma[i]));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    report.fitted_sigma_slope = sxy / sxx;
  }
  return report;
}

}  // namespace thcs
