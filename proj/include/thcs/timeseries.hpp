#pragma once

#include <string>
#include <vector>

#include "thcs/diagnostics.hpp"

namespace thcs {

/// "t,l2_omega,...,frac_half_rho", the CSV header line without newline.
const std::string& timeseries_header();

/// One row per record, values as %.17g. Throws std::invalid_argument on an
/// empty sequence (nothing is created) and thcs::Error on IO failure.
void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::string& path);

/// Inverse of write_timeseries; throws thcs::Error on a malformed file.
std::vector<DiagnosticsRecord> read_timeseries(const std::string& path);

}  // namespace thcs
