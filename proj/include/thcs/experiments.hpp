#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thcs/diagnostics.hpp"
#include "thcs/dynamics.hpp"
#include "thcs/forcing.hpp"

namespace thcs {

/// Norms fitted by the decay experiment.
const std::vector<std::string>& decay_fit_names();

struct DecayFitOutcome {
  std::optional<DecayFit> fit;
  /// "ok", "ok (window shortened)" (series hit zero inside the window),
  /// "degenerate-zero" (series identically zero), or "failed: <reason>".
  std::string status;
};

struct DecayExperimentReport {
  ModelParams params;
  double t_end = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  DecayCertificate certificate;
  std::map<std::string, DecayFitOutcome> fits;
  FitWindow window;
  /// E(t) <= E(0) exp(-beta t) (1 + 1e-6) at every sample.
  bool envelope_ok = false;
  /// E(t) <= E(0) exp(-alpha t) (1 + 1e-6), alpha as printed.
  bool paper_alpha_ok = false;
  /// The printed bound including its dissipation integral on the left-hand side:
  /// E(t) + int_0^t nu (N^2 ||lap psi||^2 + ||grad rho||^2 / Pr) <= E(0) exp(-alpha t).
  bool paper_alpha_integral_ok = false;
  double max_envelope_ratio = 0.0;
  std::vector<DiagnosticsRecord> records;
};

inline constexpr double kEnvelopeSlack = 1e-6;

/// Unforced run from `initial`; fits every norm in decay_fit_names() over the
/// default window. Throws SimulationDiverged on divergence.
DecayExperimentReport run_decay_experiment(const ModelParams& params, const State& initial,
                                           const StepControl& ctrl, double t_end,
                                           int sample_every = 1);

struct AveragingRun {
  double eta = 0.0;
  double sup_error = 0.0;
  bool diverged = false;
  std::string error;
};

struct AveragingExperimentReport {
  ModelParams params;
  std::vector<double> eta_values;
  std::vector<double> sup_errors;
  std::vector<AveragingRun> runs;
  double horizon_T = 0.0;
  double dt = 0.0;
  /// Log-log slope of sup_error against epsilon = 1/eta; empty if any error is 0.
  std::optional<double> fitted_order;
  /// sup_errors strictly decreasing in eta.
  bool monotone = false;
  /// max over runs of the state magnitude ||omega||_{1/2} + ||rho||_{1/2}.
  double state_magnitude = 0.0;
};

/// Resolves the shared step: min(ctrl.dt, (2 pi / fastest rate at max eta) / 20).
double averaging_time_step(const ForcingSpec& spec, const std::vector<double>& eta_values,
                           const StepControl& ctrl);

/// Forced (f(eta t)) against averaged (f0) trajectories from the same initial state
/// over [0, horizon_T], one pair per eta. Pairs run concurrently; results are ordered by eta.
AveragingExperimentReport run_averaging_experiment(const ModelParams& params, const State& initial,
                                                   const ForcingSpec& spec,
                                                   const std::vector<double>& eta_values,
                                                   double horizon_T, const StepControl& ctrl,
                                                   unsigned threads = 0);

/// ||a.omega - b.omega||_{1/2} + ||a.rho - b.rho||_{1/2} with A = -nu Laplacian.
/// Throws on grid or time mismatch.
double difference_norm(const State& a, const State& b, const ModelParams& params);

}  // namespace thcs
