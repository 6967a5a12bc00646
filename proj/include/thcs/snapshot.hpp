#pragma once

#include <cstdint>
#include <string>

#include "thcs/model.hpp"

namespace thcs {

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Little-endian header; with the leading magic "THCS" it occupies 44 bytes.
struct SnapshotHeader {
  std::uint32_t version = kSnapshotVersion;
  std::uint32_t resolution = 0;
  double time = 0.0;
  double nu = 0.0;
  double prandtl = 0.0;
  double n_squared = 0.0;
};

struct Snapshot {
  State state;
  ModelParams params;
};

/// Header, then omega and rho on the N x N collocation grid (row-major, x
/// fastest). Coefficients are first snapped to a grid 2^-46 below the largest
/// one (error < 1e-14 relative), which makes write(read(write(s))) reproduce
/// the first file byte for byte.
void write_snapshot(const State& state, const ModelParams& params, const std::string& path);

/// Throws thcs::Error: "not a THCS snapshot", version mismatch, truncated file.
Snapshot read_snapshot(const std::string& path);

}  // namespace thcs
