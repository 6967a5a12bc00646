#pragma once

#include <string>

#include "thcs/diagnostics.hpp"
#include "thcs/experiments.hpp"
#include "thcs/forcing.hpp"

namespace thcs {

// Pretty-printed JSON documents with sorted keys, newline-terminated.
// Non-finite numbers are written as null.

std::string to_json(const DecayCertificate& certificate);
/// Records are omitted; they go to the CSV time series.
std::string to_json(const DecayExperimentReport& report);
std::string to_json(const AveragingExperimentReport& report);
std::string to_json(const InequalityAudit& audit);
std::string to_json(const AveragingAssumptionReport& report);

/// Summary of a plain run: parameters, step, sample count, first and last record.
std::string run_summary_json(const ModelParams& params, const std::vector<DiagnosticsRecord>& records,
                             std::size_t steps, double dt);

}  // namespace thcs
