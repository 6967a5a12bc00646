#include "thcs/timeseries.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace thcs {
namespace {

using Column = double DiagnosticsRecord::*;

constexpr std::array<Column, 12> kColumns{
    &DiagnosticsRecord::time,     &DiagnosticsRecord::l2_omega,        &DiagnosticsRecord::h1_omega,
    &DiagnosticsRecord::l2_rho,   &DiagnosticsRecord::h1_rho,          &DiagnosticsRecord::h1_psi,
    &DiagnosticsRecord::h2_psi,   &DiagnosticsRecord::h3_psi,          &DiagnosticsRecord::energy,
    &DiagnosticsRecord::dissipation, &DiagnosticsRecord::frac_half_omega, &DiagnosticsRecord::frac_half_rho};

}  // namespace

const std::string& timeseries_header() {
  static const std::string header =
      "t,l2_omega,h1_omega,l2_rho,h1_rho,h1_psi,h2_psi,h3_psi,energy,dissipation,frac_half_omega,"
      "frac_half_rho";
  return header;
}

void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
  if (records.empty()) throw std::invalid_argument("write_timeseries: no records to write");
  std::string body = timeseries_header() + "\n";
  char buf[32];
  for (const auto& r : records) {
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", r.*kColumns[c]);
      if (c > 0) body += ',';
      body += buf;
    }
    body += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << body;
  out.close();
  if (!out) throw Error("failed writing " + path);
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != timeseries_header()) {
    throw Error(path + ": missing or unexpected CSV header");
  }
  std::vector<DiagnosticsRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    const char* p = line.c_str();
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      char* end = nullptr;
      r.*kColumns[c] = std::strtod(p, &end);
      const char expected = c + 1 < kColumns.size() ? ',' : '\0';
      if (end == p || *end != expected) {
        throw Error(path + ":" + std::to_string(line_no) + ": malformed row");
      }
      p = end + (expected == ',' ? 1 : 0);
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace thcs
