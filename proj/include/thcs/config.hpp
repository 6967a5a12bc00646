#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thcs/dynamics.hpp"
#include "thcs/forcing.hpp"
#include "thcs/model.hpp"
#include "thcs/random_fields.hpp"

namespace thcs {

/// Parse or validation failure. `field()` is the dotted path of the culprit
/// ("model.nu", "forcing.components[1].k"); `line()` is 1-based, 0 if unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class InitialKind { zero, single_mode, random_band };

struct InitialConfig {
  InitialKind kind = InitialKind::random_band;
  std::uint64_t seed = 0;
  double energy = 1.0;
  int mode_kx = 1;
  int mode_kz = 0;
  int band = 4;
};

struct ForcingComponentConfig {
  int kx = 1;
  int kz = 0;
  Parity parity_x = Parity::cosine;
  Parity parity_z = Parity::cosine;
  double amplitude = 1.0;
  TemporalWaveform waveform;
};

struct AveragingConfig {
  std::vector<double> eta_values{4.0, 16.0, 64.0, 256.0};
  double horizon = 2.0;
};

struct RunConfig {
  ModelParams model;
  InitialConfig initial;
  std::vector<ForcingComponentConfig> forcing;
  double eta = 1.0;
  /// Fixed step; when absent the step comes from the CFL bound with cfl_safety.
  std::optional<double> dt;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  int sample_every = 1;
  std::string out_dir = ".";
  AveragingConfig averaging;
};

/// Parses JSON text. `source` names the input in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Canonical JSON of the config with every default filled in; parse_config
/// of the echo reproduces the config.
std::string config_echo(const RunConfig& config);

State build_initial_state(const RunConfig& config);
ForcingSpec build_forcing(const RunConfig& config);

/// Fixed dt when configured. Otherwise the CFL step of `initial`, capped at
/// 1e-2 and at 1/20 of the fastest forcing period.
StepControl build_step_control(const RunConfig& config, const State& initial);

/// Closest known name to an unknown key, empty if nothing is near.
std::string suggest_key(const std::string& unknown, const std::vector<std::string>& known);

}  // namespace thcs
