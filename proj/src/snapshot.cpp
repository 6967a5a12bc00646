#include "thcs/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "thcs/transform.hpp"

namespace thcs {
namespace {

constexpr char kMagic[4] = {'T', 'H', 'C', 'S'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 4 * 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

// Transform round trips wander in the last bits, so the stored fields come from
// coefficients snapped to a power-of-two grid 2^-46 below the leading binade.
// Reading perturbs them by ~5e-16 of the largest coefficient, well inside half
// a grid step, so snapping again lands on the same points.
constexpr int kQuantumBits = 46;

double quantum_of(const AlignedVector<Complex>& coeffs) {
  double largest = 0.0;
  for (const Complex& c : coeffs) largest = std::max({largest, std::abs(c.real()), std::abs(c.imag())});
  if (largest == 0.0 || !std::isfinite(largest)) return 0.0;
  return std::ldexp(1.0, std::ilogb(largest) - kQuantumBits);
}

SpectralField snapped(const SpectralField& s) {
  AlignedVector<Complex> out(s.coefficients().begin(), s.coefficients().end());
  // Rounding can carry the largest coefficient into the next binade; snap again on the coarser grid.
  for (double quantum = quantum_of(out), used = 0.0; quantum != used; quantum = quantum_of(out)) {
    for (Complex& c : out) {
      c = Complex(std::nearbyint(c.real() / quantum) * quantum, std::nearbyint(c.imag() / quantum) * quantum);
    }
    used = quantum;
  }
  return SpectralField(s.grid(), std::move(out));
}

}  // namespace

void write_snapshot(const State& state, const ModelParams& params, const std::string& path) {
  require_same_grid(state.grid(), params.grid);
  const int n = state.grid().resolution();
  std::string out;
  out.reserve(kHeaderBytes + 2 * static_cast<std::size_t>(n) * n * 8);
  out.append(kMagic, 4);
  put_u32(out, kSnapshotVersion);
  put_u32(out, static_cast<std::uint32_t>(n));
  put_f64(out, state.time);
  put_f64(out, params.nu);
  put_f64(out, params.prandtl);
  put_f64(out, params.n_squared);
  for (const SpectralField* s : {&state.omega, &state.rho}) {
    const PhysicalField p = inverse_transform(snapped(*s));
    for (double v : p.values()) put_f64(out, v);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.close();
  if (!f) throw Error("failed writing " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string data = buf.str();
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());

  if (data.size() < 4 || std::memcmp(data.data(), kMagic, 4) != 0) {
    throw Error(path + ": not a THCS snapshot");
  }
  if (data.size() < kHeaderBytes) throw Error(path + ": truncated snapshot header");
  SnapshotHeader h;
  h.version = get_u32(bytes + 4);
  if (h.version != kSnapshotVersion) {
    throw Error(path + ": snapshot version " + std::to_string(h.version) + " is not supported (expected " +
                std::to_string(kSnapshotVersion) + ")");
  }
  h.resolution = get_u32(bytes + 8);
  h.time = get_f64(bytes + 12);
  h.nu = get_f64(bytes + 20);
  h.prandtl = get_f64(bytes + 28);
  h.n_squared = get_f64(bytes + 36);

  ModelParams params;
  try {
    params.grid = WaveGrid(static_cast<int>(h.resolution));
  } catch (const std::invalid_argument& e) {
    throw Error(path + ": " + e.what());
  }
  params.nu = h.nu;
  params.prandtl = h.prandtl;
  params.n_squared = h.n_squared;
  params.validate();

  const std::size_t cells = static_cast<std::size_t>(h.resolution) * h.resolution;
  const std::size_t expected = kHeaderBytes + 2 * cells * 8;
  if (data.size() < expected) {
    throw Error(path + ": truncated snapshot (" + std::to_string(data.size()) + " of " +
                std::to_string(expected) + " bytes)");
  }
  if (data.size() > expected) throw Error(path + ": trailing bytes after snapshot payload");

  auto field_at = [&](std::size_t offset) {
    AlignedVector<double> values(cells);
    for (std::size_t i = 0; i < cells; ++i) values[i] = get_f64(bytes + offset + 8 * i);
    return forward_transform(PhysicalField(params.grid, std::move(values)));
  };
  SpectralField omega = field_at(kHeaderBytes);
  SpectralField rho = field_at(kHeaderBytes + cells * 8);
  return {State(std::move(omega), std::move(rho), h.time), params};
}

}  // namespace thcs
