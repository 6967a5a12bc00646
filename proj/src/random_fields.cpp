#include "thcs/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thcs {
namespace {

void add_mode(AlignedVector<Complex>& coeffs, const WaveGrid& grid, int kx, int kz, Complex value) {
  if (kx < 0) {
    kx = -kx;
    kz = -kz;
    value = std::conj(value);
  }
  const auto idx = grid.index_of(kx, kz);
  if (idx) coeffs[*idx] += value;
}

// Exponential expansion of sin/cos(2 pi k s): list of (wavenumber, weight).
std::vector<std::pair<int, Complex>> axis_factors(int k, Parity p) {
  if (k == 0) {
    if (p == Parity::sine) return {};
    return {{0, Complex{1.0, 0.0}}};
  }
  if (p == Parity::cosine) return {{k, Complex{0.5, 0.0}}, {-k, Complex{0.5, 0.0}}};
  return {{k, Complex{0.0, -0.5}}, {-k, Complex{0.0, 0.5}}};
}

}  // namespace

SpectralField mode_field(const WaveGrid& grid, int kx, int kz, Parity px, Parity pz,
                         double amplitude) {
  if (!grid.retained(kx, kz)) {
    throw std::invalid_argument("mode (" + std::to_string(kx) + "," + std::to_string(kz) +
                                ") is not resolved on N=" + std::to_string(grid.resolution()));
  }
  const auto fx = axis_factors(kx, px);
  const auto fz = axis_factors(kz, pz);
  if (fx.empty() || fz.empty()) {
    throw std::invalid_argument("sine parity along an axis with zero wavenumber gives a zero field");
  }
  AlignedVector<Complex> coeffs(grid.spectral_size());
  for (const auto& [ax, cx] : fx) {
    for (const auto& [az, cz] : fz) {
      // Half-plane storage: kx < 0 entries are the conjugates of stored ones.
      if (ax < 0) continue;
      add_mode(coeffs, grid, ax, az, amplitude * cx * cz);
    }
  }
  return SpectralField(grid, std::move(coeffs));
}

SpectralField plane_wave(const WaveGrid& grid, int kx, int kz, double amplitude, double phase) {
  if (!grid.retained(kx, kz)) {
    throw std::invalid_argument("plane wave (" + std::to_string(kx) + "," + std::to_string(kz) +
                                ") is not resolved on N=" + std::to_string(grid.resolution()));
  }
  AlignedVector<Complex> coeffs(grid.spectral_size());
  const Complex half = 0.5 * amplitude * std::polar(1.0, phase);
  if (kx > 0 || (kx == 0 && kz > 0)) {
    add_mode(coeffs, grid, kx, kz, half);
    if (kx == 0) add_mode(coeffs, grid, 0, -kz, std::conj(half));
  } else {
    add_mode(coeffs, grid, -kx, -kz, std::conj(half));
    if (kx == 0) add_mode(coeffs, grid, 0, kz, half);
  }
  return SpectralField(grid, std::move(coeffs));
}

SpectralField random_band_field(const WaveGrid& grid, std::mt19937_64& rng,
                                const RandomBandOptions& options) {
  const int band = std::min(options.band, grid.cutoff());
  if (band < 1) throw std::invalid_argument("random band must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  AlignedVector<Complex> coeffs(grid.spectral_size());
  for (int kx = 0; kx <= band; ++kx) {
    for (int kz = -band; kz <= band; ++kz) {
      if (kx == 0 && kz <= 0) continue;
      const double sigma =
          std::pow(1.0 + static_cast<double>(kx * kx + kz * kz), -0.5 * options.spectral_slope);
      const double re = gauss(rng);
      const double im = gauss(rng);
      const Complex c = sigma * Complex{re, im} / std::sqrt(2.0);
      add_mode(coeffs, grid, kx, kz, c);
      if (kx == 0) add_mode(coeffs, grid, 0, -kz, std::conj(c));
    }
  }
  return SpectralField(grid, std::move(coeffs));
}

}  // namespace thcs
