#pragma once

#include <optional>
#include <vector>

#include "thcs/spectral_field.hpp"

namespace thcs {

enum class WaveformKind { constant, cosine, sine, finite_series };

struct SeriesTerm {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

/// Scalar time profile of one forcing component. Oscillatory kinds run on the
/// fast clock: cos(eta * frequency * t + phase). finite_series is a sum of
/// such cosines.
struct TemporalWaveform {
  WaveformKind kind = WaveformKind::constant;
  double frequency = 0.0;
  double phase = 0.0;
  std::vector<SeriesTerm> terms;

  static TemporalWaveform constant() { return {}; }
  static TemporalWaveform cosine(double frequency, double phase = 0.0) {
    return {WaveformKind::cosine, frequency, phase, {}};
  }
  static TemporalWaveform sine(double frequency, double phase = 0.0) {
    return {WaveformKind::sine, frequency, phase, {}};
  }
  static TemporalWaveform series(std::vector<SeriesTerm> terms) {
    return {WaveformKind::finite_series, 0.0, 0.0, std::move(terms)};
  }

  /// Throws std::invalid_argument on nonpositive oscillation frequencies.
  void validate() const;
  bool oscillatory() const noexcept { return kind != WaveformKind::constant; }
  double value(double eta, double t) const;
  /// Long-time average: 1 for constant, 0 otherwise.
  double mean() const noexcept { return kind == WaveformKind::constant ? 1.0 : 0.0; }
  /// Exact (1/T) * integral over [t0, t0 + T].
  double window_average(double eta, double t0, double window) const;
  /// Smallest / largest angular rate eta * frequency (0 for constant).
  double min_rate(double eta) const noexcept;
  double max_rate(double eta) const noexcept;
};

struct ForcingComponent {
  SpectralField spatial;
  TemporalWaveform waveform;
};

/// f(x, z, t) = sum_i spatial_i(x, z) * waveform_i(eta * t).
class ForcingSpec {
 public:
  explicit ForcingSpec(WaveGrid grid, double eta = 1.0);

  /// Throws GridMismatch or std::invalid_argument.
  ForcingSpec& add(SpectralField spatial, TemporalWaveform waveform);
  ForcingSpec with_eta(double eta) const;

  const WaveGrid& grid() const noexcept { return grid_; }
  double eta() const noexcept { return eta_; }
  const std::vector<ForcingComponent>& components() const noexcept { return components_; }
  bool empty() const noexcept { return components_.empty(); }
  bool oscillatory() const noexcept;
  /// Largest angular rate across components (0 when none oscillate).
  double max_rate() const noexcept;

 private:
  WaveGrid grid_;
  double eta_;
  std::vector<ForcingComponent> components_;
};

SpectralField evaluate_forcing(const ForcingSpec& spec, double t);

/// Exact time average f0: constant components pass through, oscillatory ones vanish.
SpectralField time_average(const ForcingSpec& spec);

/// Same spec with every component replaced by its average (a constant forcing by f0).
ForcingSpec averaged_spec(const ForcingSpec& spec);

/// ||A^gamma ((1/T) int_{t0}^{t0+T} f - f0)|| with A = -nu Laplacian, closed form.
double average_defect(const ForcingSpec& spec, double t_start, double window, double gamma,
                      double nu);

struct AveragingAssumptionReport {
  double gamma = 0.5;
  double nu = 1.0;
  double t_start = 0.0;
  std::vector<double> windows;
  /// average_defect at t_start for each window.
  std::vector<double> defects;
  /// Empirical sigma(T): sup over start times and windows T' >= T of the defect,
  /// i.e. the least nonincreasing bound valid for every start time.
  std::vector<double> sigma;
  /// Log-log slope of sigma against T; empty when sigma vanishes (no oscillation).
  std::optional<double> fitted_sigma_slope;
  /// max over windows of sigma (an admissible M_gamma).
  double m_gamma = 0.0;
};

/// Throws std::invalid_argument on an empty or non-increasing window list.
AveragingAssumptionReport assumption_report(const ForcingSpec& spec, double gamma, double nu,
                                            const std::vector<double>& windows,
                                            double t_start = 0.0);

}  // namespace thcs
