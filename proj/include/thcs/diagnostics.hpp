#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thcs/model.hpp"

namespace thcs {

/// One time sample of the norm ladder and energy functionals.
struct DiagnosticsRecord {
  double time = 0.0;
  double l2_omega = 0.0;
  double h1_omega = 0.0;
  double l2_rho = 0.0;
  double h1_rho = 0.0;
  double h1_psi = 0.0;
  double h2_psi = 0.0;
  double h3_psi = 0.0;
  /// N^2 ||grad psi||^2 + ||rho||^2
  double energy = 0.0;
  /// 2 nu (N^2 ||lap psi||^2 + ||grad rho||^2 / Pr) = -dE/dt when unforced
  double dissipation = 0.0;
  double frac_half_omega = 0.0;
  double frac_half_rho = 0.0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

DiagnosticsRecord record(const State& state, const ModelParams& params);

/// Names accepted by `series_of`, in CSV column order (time excluded).
const std::vector<std::string>& diagnostic_names();
/// Extracts (t, value) pairs for a named column; throws std::invalid_argument for unknown names.
std::vector<std::pair<double, double>> series_of(const std::vector<DiagnosticsRecord>& records,
                                                 const std::string& name);

struct DecayFit {
  double t_lo = 0.0;
  double t_hi = 0.0;
  /// -slope of ln(value) against t
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 10;

/// Least-squares line through (t, ln v) over samples with t in [t_lo, t_hi].
/// Throws std::invalid_argument if any value in the window is nonpositive or
/// fewer than kMinFitSamples fall inside it. A constant series has r_squared 1.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series, double t_lo,
                        double t_hi);

/// Window rule for decay fits: the last half of the samples recorded after the
/// energy first drops below 1e-2 of its initial value. `transient_cleared` is
/// false when that never happens (the last half of all samples is used).
struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool transient_cleared = false;
};
FitWindow default_fit_window(const std::vector<DiagnosticsRecord>& records);

struct CertificateOptions {
  double delta = 0.5;
  double delta2 = 0.5;
  /// Free parameter in (0, 1) entering alpha2.
  double delta3 = 0.5;
};

/// Decay constants of the unforced problem evaluated for one parameter set.
struct DecayCertificate {
  double lambda1 = kLambda1;
  /// (nu / lambda1) min(1, 1/Pr), the exponent as printed in the energy bound.
  double alpha = 0.0;
  /// 2 nu lambda1 min(1, 1/Pr): the exponent that follows from the energy identity and Poincare.
  double beta_rigorous = 0.0;
  double a1 = 0.0;
  /// (1 + 1/lambda1 + 1/lambda1^2)^(1/2): the sharp H2 / lap constant, reported only.
  double a1_sharp = 0.0;
  double a2 = 0.0;
  double delta = 0.5;
  double delta1 = 0.0;
  double delta2 = 0.5;
  double delta3 = 0.5;
  bool delta1_feasible = false;
  /// Only meaningful when delta1_feasible.
  double phi0 = 0.0;
  /// sqrt(a1^4 a2^4 (6 + 2 sqrt 2) Pr^2 lambda1 / (4 delta2 (1 - delta2)))
  double nu_threshold = 0.0;
  /// nu >= nu_threshold
  bool pr_threshold_holds = false;
  double alpha2 = 0.0;
  /// Transient-time lower bound with the undefined prefactor taken as 1.
  std::optional<double> t1;
  std::vector<std::string> flags;
};

double lemma_a1() noexcept;
double lemma_a2() noexcept;

DecayCertificate derive_certificate(const ModelParams& params, const State& initial,
                                    const CertificateOptions& options = {});

struct AuditOptions {
  int trials = 1000;
  std::uint64_t seed = 7;
  /// Viscosity used for the fractional norms in the Lipschitz and semigroup checks.
  double nu = 1.0;
  /// 0 = THCS_THREADS / hardware concurrency.
  unsigned threads = 0;
};

struct AuditMaximum {
  double value = 0.0;
  /// Trial index and the random-field descriptor (band, slope) that attained it.
  int trial = -1;
  int band = 0;
  double slope = 0.0;
};

struct InequalityAudit {
  int resolution = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  /// |int J(f,g) g| / (||f||_H1 ||g||_H1^2)
  AuditMaximum jacobian_self;
  /// |int J(f,g) h + int J(f,h) g| / (||f||_H1 (||g||_H1 + ||h||_H1)^2)
  AuditMaximum jacobian_antisymmetry;
  /// ||u||_H2 / ||lap u||, bounded by a1
  AuditMaximum h2_ratio;
  double h2_ratio_min = 0.0;
  /// ||u||_L4 / (||u||^(1/2) ||grad u||^(1/2)), bounded by a2
  AuditMaximum l4_ratio;
  /// Empirical Lipschitz constant of (u, v) -> J(lap^-1 u, v) in the half-power norm.
  AuditMaximum lipschitz;
  /// sup_{k,t} (nu lam_k)^a exp(-nu lam_k t) / (K_a t^-a exp(-nu lambda1 t / 2)),
  /// K_a = (2a/e)^a, over a in {0, 1/4, 1/2, 3/4, 1, 3/2}.
  double semigroup_ratio = 0.0;
  double semigroup_rate = 0.0;
};

/// Randomized check of the functional inequalities on seeded band-limited
/// fields. Trials are independent; the report is identical for any thread count.
InequalityAudit inequality_audit(const WaveGrid& grid, const AuditOptions& options);

}  // namespace thcs
