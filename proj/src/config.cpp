#include "thcs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace thcs {
namespace {

using nlohmann::json;

std::string located(const std::string& field, const std::string& message, int line) {
  std::string out = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
  if (!field.empty()) out += field + ": ";
  return out + message;
}

const std::map<std::string, std::string>& key_aliases() {
  static const std::map<std::string, std::string> aliases{
      {"viscosity", "nu"},       {"viscocity", "nu"},     {"kinematic_viscosity", "nu"},
      {"pr", "prandtl"},         {"Pr", "prandtl"},       {"prandtl_number", "prandtl"},
      {"N2", "n_squared"},       {"n2", "n_squared"},     {"buoyancy_frequency", "n_squared"},
      {"N", "resolution"},       {"n", "resolution"},     {"size", "resolution"},
      {"time_step", "dt"},       {"timestep", "dt"},      {"cfl", "cfl_safety"},
      {"t_final", "t_end"},      {"horizon_T", "horizon"}, {"etas", "eta_values"},
  };
  return aliases;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::vector<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, value] : node_.items()) {
      if (std::find(known.begin(), known.end(), key) != known.end()) continue;
      std::string msg = "unknown key \"" + key + "\"";
      const std::string hint = suggest_key(key, known);
      if (!hint.empty()) msg += "; did you mean \"" + hint + "\"?";
      throw ConfigError(field(key), msg);
    }
  }

  bool has(const char* key) const { return node_.contains(key); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const json& at(const char* key) const { return node_.at(key); }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    out = v.get<double>();
  }

  void integer(const char* key, int& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    out = v.get<int>();
  }

  void text(const char* key, std::string& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    out = v.get<std::string>();
  }

 private:
  const json& node_;
  std::string path_;
};

void wavevector(const json& v, const std::string& field, int& kx, int& kz) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ConfigError(field, "expected [k_x, k_z] integers");
  }
  kx = v[0].get<int>();
  kz = v[1].get<int>();
}

Parity parse_parity(const json& v, const std::string& field) {
  if (v == "sine") return Parity::sine;
  if (v == "cosine") return Parity::cosine;
  throw ConfigError(field, "expected \"sine\" or \"cosine\"");
}

const char* parity_name(Parity p) { return p == Parity::sine ? "sine" : "cosine"; }

const char* waveform_name(WaveformKind k) {
  switch (k) {
    case WaveformKind::constant: return "constant";
    case WaveformKind::cosine: return "cosine";
    case WaveformKind::sine: return "sine";
    case WaveformKind::finite_series: return "series";
  }
  return "constant";
}

const char* initial_name(InitialKind k) {
  switch (k) {
    case InitialKind::zero: return "zero";
    case InitialKind::single_mode: return "single_mode";
    case InitialKind::random_band: return "random_band";
  }
  return "zero";
}

void positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive");
}

TemporalWaveform parse_waveform(const json& node, const std::string& path) {
  Reader r(node, path);
  r.allow({"kind", "frequency", "phase", "terms"});
  std::string kind = "constant";
  r.text("kind", kind);
  TemporalWaveform w;
  if (kind == "constant") {
    if (r.has("frequency") || r.has("terms")) {
      throw ConfigError(path, "a constant waveform takes no frequency or terms");
    }
    return w;
  }
  if (kind == "cosine" || kind == "sine") {
    w.kind = kind == "cosine" ? WaveformKind::cosine : WaveformKind::sine;
    w.frequency = 1.0;
    r.number("frequency", w.frequency);
    r.number("phase", w.phase);
    positive(w.frequency, r.field("frequency"));
    if (r.has("terms")) throw ConfigError(r.field("terms"), "only a series waveform takes terms");
    return w;
  }
  if (kind == "series") {
    w.kind = WaveformKind::finite_series;
    if (!r.has("terms") || !r.at("terms").is_array() || r.at("terms").empty()) {
      throw ConfigError(r.field("terms"), "a series waveform needs a nonempty array of terms");
    }
    const json& terms = r.at("terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = r.field("terms") + "[" + std::to_string(i) + "]";
      Reader t(terms[i], tp);
      t.allow({"amplitude", "frequency", "phase"});
      SeriesTerm term;
      t.number("amplitude", term.amplitude);
      t.number("frequency", term.frequency);
      t.number("phase", term.phase);
      positive(term.frequency, t.field("frequency"));
      w.terms.push_back(term);
    }
    return w;
  }
  throw ConfigError(r.field("kind"), "unknown waveform kind \"" + kind +
                                         "\" (expected constant, cosine, sine or series)");
}

ForcingComponentConfig parse_component(const json& node, const std::string& path) {
  Reader r(node, path);
  r.allow({"k", "parity", "amplitude", "waveform"});
  ForcingComponentConfig c;
  if (!r.has("k")) throw ConfigError(r.field("k"), "required");
  wavevector(r.at("k"), r.field("k"), c.kx, c.kz);
  if (r.has("parity")) {
    const json& p = r.at("parity");
    if (p.is_string()) {
      c.parity_x = c.parity_z = parse_parity(p, r.field("parity"));
    } else if (p.is_array() && p.size() == 2) {
      c.parity_x = parse_parity(p[0], r.field("parity") + "[0]");
      c.parity_z = parse_parity(p[1], r.field("parity") + "[1]");
    } else {
      throw ConfigError(r.field("parity"), "expected a parity or a [x, z] pair of parities");
    }
  }
  r.number("amplitude", c.amplitude);
  if (!std::isfinite(c.amplitude)) throw ConfigError(r.field("amplitude"), "must be finite");
  if (r.has("waveform")) c.waveform = parse_waveform(r.at("waveform"), r.field("waveform"));
  return c;
}

RunConfig from_json(const json& root) {
  RunConfig cfg;
  Reader top(root, "");
  top.allow({"model", "grid", "initial", "forcing", "stepping", "output", "averaging"});

  if (top.has("model")) {
    Reader r(top.at("model"), "model");
    r.allow({"nu", "prandtl", "n_squared"});
    r.number("nu", cfg.model.nu);
    r.number("prandtl", cfg.model.prandtl);
    r.number("n_squared", cfg.model.n_squared);
  }
  positive(cfg.model.nu, "model.nu");
  positive(cfg.model.prandtl, "model.prandtl");
  positive(cfg.model.n_squared, "model.n_squared");

  if (top.has("grid")) {
    Reader r(top.at("grid"), "grid");
    r.allow({"resolution"});
    int n = cfg.model.grid.resolution();
    r.integer("resolution", n);
    try {
      cfg.model.grid = WaveGrid(n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("grid.resolution", e.what());
    }
  }

  if (top.has("initial")) {
    Reader r(top.at("initial"), "initial");
    r.allow({"kind", "seed", "energy", "mode", "band"});
    std::string kind = initial_name(cfg.initial.kind);
    r.text("kind", kind);
    if (kind == "zero") {
      cfg.initial.kind = InitialKind::zero;
    } else if (kind == "single_mode") {
      cfg.initial.kind = InitialKind::single_mode;
    } else if (kind == "random_band") {
      cfg.initial.kind = InitialKind::random_band;
    } else {
      throw ConfigError("initial.kind", "unknown kind \"" + kind + "\" (expected zero, single_mode or random_band)");
    }
    if (r.has("seed")) {
      const json& s = r.at("seed");
      if (!s.is_number_unsigned()) throw ConfigError("initial.seed", "expected a nonnegative integer");
      cfg.initial.seed = s.get<std::uint64_t>();
    }
    r.number("energy", cfg.initial.energy);
    if (r.has("mode")) wavevector(r.at("mode"), "initial.mode", cfg.initial.mode_kx, cfg.initial.mode_kz);
    r.integer("band", cfg.initial.band);
  }
  if (!(cfg.initial.energy >= 0.0) || !std::isfinite(cfg.initial.energy)) {
    throw ConfigError("initial.energy", "must be nonnegative");
  }
  if (cfg.initial.band < 1) throw ConfigError("initial.band", "must be >= 1");
  if (cfg.initial.kind == InitialKind::single_mode) {
    const int kx = cfg.initial.mode_kx, kz = cfg.initial.mode_kz;
    if ((kx == 0 && kz == 0) || !cfg.model.grid.retained(kx, kz)) {
      throw ConfigError("initial.mode", "must be a nonzero mode inside the dealiasing cutoff");
    }
  }

  if (top.has("forcing")) {
    Reader r(top.at("forcing"), "forcing");
    r.allow({"components", "eta"});
    r.number("eta", cfg.eta);
    if (r.has("components")) {
      const json& comps = r.at("components");
      if (!comps.is_array()) throw ConfigError("forcing.components", "expected an array");
      for (std::size_t i = 0; i < comps.size(); ++i) {
        cfg.forcing.push_back(parse_component(comps[i], "forcing.components[" + std::to_string(i) + "]"));
      }
    }
  }
  if (!(cfg.eta >= 1.0) || !std::isfinite(cfg.eta)) throw ConfigError("forcing.eta", "must be >= 1");

  if (top.has("stepping")) {
    Reader r(top.at("stepping"), "stepping");
    r.allow({"dt", "cfl_safety"});
    if (r.has("dt") && r.has("cfl_safety")) {
      throw ConfigError("stepping", "give either dt or cfl_safety, not both");
    }
    if (r.has("dt")) {
      double dt = 0.0;
      r.number("dt", dt);
      positive(dt, "stepping.dt");
      cfg.dt = dt;
    }
    r.number("cfl_safety", cfg.cfl_safety);
  }
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
    throw ConfigError("stepping.cfl_safety", "must lie in (0, 1]");
  }

  if (top.has("output")) {
    Reader r(top.at("output"), "output");
    r.allow({"t_end", "sample_every", "out_dir"});
    r.number("t_end", cfg.t_end);
    r.integer("sample_every", cfg.sample_every);
    r.text("out_dir", cfg.out_dir);
  }
  positive(cfg.t_end, "output.t_end");
  if (cfg.sample_every < 1) throw ConfigError("output.sample_every", "must be >= 1");
  if (cfg.out_dir.empty()) throw ConfigError("output.out_dir", "must not be empty");

  if (top.has("averaging")) {
    Reader r(top.at("averaging"), "averaging");
    r.allow({"eta_values", "horizon"});
    if (r.has("eta_values")) {
      const json& v = r.at("eta_values");
      if (!v.is_array() || v.empty()) throw ConfigError("averaging.eta_values", "expected a nonempty array");
      cfg.averaging.eta_values.clear();
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("averaging.eta_values", "expected numbers");
        cfg.averaging.eta_values.push_back(e.get<double>());
      }
    }
    r.number("horizon", cfg.averaging.horizon);
  }
  for (double e : cfg.averaging.eta_values) {
    if (!(e >= 1.0) || !std::isfinite(e)) throw ConfigError("averaging.eta_values", "every eta must be >= 1");
  }
  positive(cfg.averaging.horizon, "averaging.horizon");

  // Build the forcing once so that mode errors surface at load time.
  for (std::size_t i = 0; i < cfg.forcing.size(); ++i) {
    const auto& c = cfg.forcing[i];
    try {
      mode_field(cfg.model.grid, c.kx, c.kz, c.parity_x, c.parity_z, 1.0);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("forcing.components[" + std::to_string(i) + "].k", e.what());
    }
  }
  return cfg;
}

json waveform_json(const TemporalWaveform& w) {
  json out{{"kind", waveform_name(w.kind)}};
  if (w.kind == WaveformKind::cosine || w.kind == WaveformKind::sine) {
    out["frequency"] = w.frequency;
    out["phase"] = w.phase;
  } else if (w.kind == WaveformKind::finite_series) {
    json terms = json::array();
    for (const auto& t : w.terms) {
      terms.push_back({{"amplitude", t.amplitude}, {"frequency", t.frequency}, {"phase", t.phase}});
    }
    out["terms"] = terms;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, int line)
    : Error(located(field, message, line)), field_(std::move(field)), line_(line) {}

std::string suggest_key(const std::string& unknown, const std::vector<std::string>& known) {
  const auto& aliases = key_aliases();
  if (auto it = aliases.find(unknown); it != aliases.end()) {
    if (std::find(known.begin(), known.end(), it->second) != known.end()) return it->second;
  }
  std::string best;
  std::size_t best_d = std::max<std::size_t>(2, unknown.size() / 3) + 1;
  for (const auto& k : known) {
    const std::size_t d = edit_distance(unknown, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
    throw ConfigError("", source + ": invalid JSON: " + e.what(), line);
  }
  return from_json(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string config_echo(const RunConfig& cfg) {
  json root;
  root["model"] = {{"nu", cfg.model.nu}, {"prandtl", cfg.model.prandtl}, {"n_squared", cfg.model.n_squared}};
  root["grid"] = {{"resolution", cfg.model.grid.resolution()}};
  root["initial"] = {{"kind", initial_name(cfg.initial.kind)},
                     {"seed", cfg.initial.seed},
                     {"energy", cfg.initial.energy},
                     {"mode", {cfg.initial.mode_kx, cfg.initial.mode_kz}},
                     {"band", cfg.initial.band}};
  json comps = json::array();
  for (const auto& c : cfg.forcing) {
    comps.push_back({{"k", {c.kx, c.kz}},
                     {"parity", {parity_name(c.parity_x), parity_name(c.parity_z)}},
                     {"amplitude", c.amplitude},
                     {"waveform", waveform_json(c.waveform)}});
  }
  root["forcing"] = {{"components", comps}, {"eta", cfg.eta}};
  if (cfg.dt) {
    root["stepping"] = {{"dt", *cfg.dt}};
  } else {
    root["stepping"] = {{"cfl_safety", cfg.cfl_safety}};
  }
  root["output"] = {{"t_end", cfg.t_end}, {"sample_every", cfg.sample_every}, {"out_dir", cfg.out_dir}};
  root["averaging"] = {{"eta_values", cfg.averaging.eta_values}, {"horizon", cfg.averaging.horizon}};
  return root.dump(2) + "\n";
}

State build_initial_state(const RunConfig& cfg) {
  switch (cfg.initial.kind) {
    case InitialKind::zero: return State(cfg.model.grid);
    case InitialKind::single_mode:
      return single_mode_state(cfg.model, cfg.initial.mode_kx, cfg.initial.mode_kz, cfg.initial.energy);
    case InitialKind::random_band:
      return random_band_state(cfg.model, cfg.initial.seed, cfg.initial.energy, cfg.initial.band);
  }
  return State(cfg.model.grid);
}

ForcingSpec build_forcing(const RunConfig& cfg) {
  ForcingSpec spec(cfg.model.grid, cfg.eta);
  for (const auto& c : cfg.forcing) {
    spec.add(mode_field(cfg.model.grid, c.kx, c.kz, c.parity_x, c.parity_z, c.amplitude), c.waveform);
  }
  return spec;
}

StepControl build_step_control(const RunConfig& cfg, const State& initial) {
  StepControl ctrl;
  ctrl.cfl_safety = cfg.cfl_safety;
  if (cfg.dt) {
    ctrl.dt = *cfg.dt;
    return ctrl;
  }
  double dt = std::min(cfl_time_step(initial, ctrl), 1e-2);
  const double rate = build_forcing(cfg).max_rate();
  if (rate > 0.0) dt = std::min(dt, (kTwoPi / rate) / 20.0);
  ctrl.dt = dt;
  return ctrl;
}

}  // namespace thcs
