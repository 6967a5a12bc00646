#pragma once

#include <random>

#include "thcs/spectral_field.hpp"

namespace thcs {

enum class Parity { sine, cosine };

/// amplitude * P(2 pi kx x) * P(2 pi kz z) with P = sin or cos per axis.
/// Throws std::invalid_argument if the mode is dealiased, the zero mode, or
/// identically zero (sine parity along an axis with k = 0).
SpectralField mode_field(const WaveGrid& grid, int kx, int kz, Parity px, Parity pz,
                         double amplitude);

/// amplitude * cos(2 pi (kx x + kz z) + phase).
SpectralField plane_wave(const WaveGrid& grid, int kx, int kz, double amplitude, double phase = 0.0);

struct RandomBandOptions {
  /// Keep modes with max(|kx|, |kz|) <= band (clipped to the dealias cutoff).
  int band = 4;
  /// Coefficient standard deviation scales like (1 + |k|^2)^(-slope / 2).
  double spectral_slope = 1.0;
};

/// Real band-limited field with independent Gaussian coefficients. Draw order is
/// fixed, so a seeded generator reproduces the field bit for bit.
SpectralField random_band_field(const WaveGrid& grid, std::mt19937_64& rng,
                                const RandomBandOptions& options = {});

}  // namespace thcs
