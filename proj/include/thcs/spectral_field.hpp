#pragma once

#include <span>

#include "thcs/common.hpp"
#include "thcs/grid.hpp"

namespace thcs {

/// Truncated Fourier representation of a real, zero-mean, doubly periodic field:
///   u(x, z) = sum_k c_k exp(2 pi i (kx x + kz z)).
///
/// Construction zeroes the mean and every dealiased slot. Hermitian symmetry of the
/// kx = 0 column is a caller obligation (checked by inverse_transform); every
/// operation in this library preserves it exactly.
class SpectralField {
 public:
  explicit SpectralField(WaveGrid grid);
  /// Throws std::invalid_argument if the size does not match the grid layout.
  SpectralField(WaveGrid grid, AlignedVector<Complex> coefficients);

  const WaveGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }

  /// Coefficient of any wavevector, using c(-k) = conj(c(k)) for kx < 0.
  /// Unrepresentable wavevectors read as zero.
  Complex coefficient(int kx, int kz) const noexcept;

  /// max over the kx = 0 column of |c(0,kz) - conj(c(0,-kz))| / 2.
  double hermitian_residue() const noexcept;
  SpectralField symmetrized() const;
  bool is_zero() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

  /// Bitwise comparison of the coefficient arrays.
  friend bool operator==(const SpectralField& a, const SpectralField& b) noexcept;

 private:
  void project() noexcept;

  WaveGrid grid_;
  AlignedVector<Complex> coefficients_;
};

/// Collocation values of a real field, row-major with x fastest.
class PhysicalField {
 public:
  explicit PhysicalField(WaveGrid grid);
  PhysicalField(WaveGrid grid, AlignedVector<double> values);

  const WaveGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double at(int ix, int iz) const noexcept {
    return values_[static_cast<std::size_t>(iz) * grid_.resolution() + ix];
  }
  double& at(int ix, int iz) noexcept {
    return values_[static_cast<std::size_t>(iz) * grid_.resolution() + ix];
  }
  double mean() const noexcept;

  /// Samples fn(x, z) at x = ix / N, z = iz / N.
  template <class Fn>
  static PhysicalField sample(const WaveGrid& grid, Fn&& fn) {
    PhysicalField p(grid);
    const int n = grid.resolution();
    for (int iz = 0; iz < n; ++iz) {
      for (int ix = 0; ix < n; ++ix) {
        p.at(ix, iz) = fn(static_cast<double>(ix) / n, static_cast<double>(iz) / n);
      }
    }
    return p;
  }

 private:
  WaveGrid grid_;
  AlignedVector<double> values_;
};

}  // namespace thcs
