#include "thcs/report_json.hpp"

#include <json.hpp>

namespace thcs {
namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json params_json(const ModelParams& p) {
  return {{"nu", p.nu}, {"prandtl", p.prandtl}, {"n_squared", p.n_squared}, {"resolution", p.grid.resolution()}};
}

json record_json(const DiagnosticsRecord& r) {
  json out{{"t", r.time}};
  const auto& names = diagnostic_names();
  const std::vector<DiagnosticsRecord> one{r};
  for (const auto& name : names) out[name] = series_of(one, name).front().second;
  return out;
}

json certificate_json(const DecayCertificate& c) {
  json out{{"lambda1", c.lambda1},
           {"alpha", c.alpha},
           {"beta_rigorous", c.beta_rigorous},
           {"a1", c.a1},
           {"a1_sharp", c.a1_sharp},
           {"a2", c.a2},
           {"delta", c.delta},
           {"delta1", c.delta1},
           {"delta2", c.delta2},
           {"delta3", c.delta3},
           {"delta1_feasible", c.delta1_feasible},
           {"phi0", c.phi0},
           {"nu_threshold", c.nu_threshold},
           {"pr_threshold_holds", c.pr_threshold_holds},
           {"alpha2", c.alpha2},
           {"flags", c.flags}};
  out["t1"] = c.t1 ? json(*c.t1) : json(nullptr);
  return out;
}

json maximum_json(const AuditMaximum& m) {
  return {{"value", m.value}, {"trial", m.trial}, {"band", m.band}, {"slope", m.slope}};
}

}  // namespace

std::string to_json(const DecayCertificate& certificate) { return dump(certificate_json(certificate)); }

std::string to_json(const DecayExperimentReport& r) {
  json fits = json::object();
  for (const auto& [name, outcome] : r.fits) {
    json f{{"status", outcome.status}};
    if (outcome.fit) {
      f["rate"] = outcome.fit->rate;
      f["intercept"] = outcome.fit->intercept;
      f["r_squared"] = outcome.fit->r_squared;
      f["samples"] = outcome.fit->samples;
      f["t_lo"] = outcome.fit->t_lo;
      f["t_hi"] = outcome.fit->t_hi;
    }
    fits[name] = f;
  }
  json out{{"kind", "decay"},
           {"params", params_json(r.params)},
           {"t_end", r.t_end},
           {"dt", r.dt},
           {"steps", r.steps},
           {"certificate", certificate_json(r.certificate)},
           {"fits", fits},
           {"window",
            {{"t_lo", r.window.t_lo}, {"t_hi", r.window.t_hi}, {"transient_cleared", r.window.transient_cleared}}},
           {"envelope_ok", r.envelope_ok},
           {"paper_alpha_ok", r.paper_alpha_ok},
           {"paper_alpha_integral_ok", r.paper_alpha_integral_ok},
           {"max_envelope_ratio", r.max_envelope_ratio},
           {"samples", r.records.size()}};
  return dump(out);
}

std::string to_json(const AveragingExperimentReport& r) {
  json runs = json::array();
  for (const auto& run : r.runs) {
    json j{{"eta", run.eta}, {"sup_error", run.sup_error}, {"diverged", run.diverged}};
    if (!run.error.empty()) j["error"] = run.error;
    runs.push_back(j);
  }
  json out{{"kind", "average"},
           {"params", params_json(r.params)},
           {"eta_values", r.eta_values},
           {"sup_errors", r.sup_errors},
           {"runs", runs},
           {"horizon_T", r.horizon_T},
           {"dt", r.dt},
           {"monotone", r.monotone},
           {"state_magnitude", r.state_magnitude}};
  out["fitted_order"] = r.fitted_order ? json(*r.fitted_order) : json(nullptr);
  return dump(out);
}

std::string to_json(const InequalityAudit& a) {
  json out{{"kind", "audit"},
           {"resolution", a.resolution},
           {"trials", a.trials},
           {"seed", a.seed},
           {"a1", a.a1},
           {"a2", a.a2},
           {"jacobian_self", maximum_json(a.jacobian_self)},
           {"jacobian_antisymmetry", maximum_json(a.jacobian_antisymmetry)},
           {"h2_ratio", maximum_json(a.h2_ratio)},
           {"h2_ratio_min", a.h2_ratio_min},
           {"l4_ratio", maximum_json(a.l4_ratio)},
           {"lipschitz", maximum_json(a.lipschitz)},
           {"semigroup_ratio", a.semigroup_ratio},
           {"semigroup_rate", a.semigroup_rate}};
  return dump(out);
}

std::string to_json(const AveragingAssumptionReport& r) {
  json out{{"kind", "averaging_assumption"},
           {"gamma", r.gamma},
           {"nu", r.nu},
           {"t_start", r.t_start},
           {"windows", r.windows},
           {"defects", r.defects},
           {"sigma", r.sigma},
           {"m_gamma", r.m_gamma}};
  out["fitted_sigma_slope"] = r.fitted_sigma_slope ? json(*r.fitted_sigma_slope) : json(nullptr);
  return dump(out);
}

std::string run_summary_json(const ModelParams& params, const std::vector<DiagnosticsRecord>& records,
                             std::size_t steps, double dt) {
  json out{{"kind", "run"}, {"params", params_json(params)}, {"steps", steps}, {"dt", dt},
           {"samples", records.size()}};
  if (!records.empty()) {
    out["first"] = record_json(records.front());
    out["last"] = record_json(records.back());
  }
  return dump(out);
}

}  // namespace thcs
