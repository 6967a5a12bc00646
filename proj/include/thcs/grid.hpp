#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>

#include "thcs/common.hpp"

namespace thcs {

/// Collocation grid on the unit periodic square and its half-plane wavevector layout.
///
/// Physical values are row-major with x fastest: index = iz * N + ix.
/// Spectral coefficients follow the real-to-complex layout: N rows (kz) by
/// N/2 + 1 columns (kx >= 0); row r holds kz = r for r <= N/2, else r - N.
/// Modes with kx < 0 are implied by Hermitian symmetry.
class WaveGrid {
 public:
  struct Tables;

  /// Throws std::invalid_argument unless resolution is a power of two >= 16.
  explicit WaveGrid(int resolution);

  int resolution() const noexcept { return n_; }
  /// Two-thirds rule: max(|kx|, |kz|) <= floor(N/3) survives.
  int cutoff() const noexcept { return n_ / 3; }
  int columns() const noexcept { return n_ / 2 + 1; }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(columns());
  }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  double spacing() const noexcept { return 1.0 / n_; }

  int kz_of_row(int row) const noexcept { return row <= n_ / 2 ? row : row - n_; }
  int row_of_kz(int kz) const noexcept { return kz >= 0 ? kz : kz + n_; }
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(columns()) +
           static_cast<std::size_t>(col);
  }
  /// Storage index of wavevector (kx, kz) when kx >= 0 and the mode is representable.
  std::optional<std::size_t> index_of(int kx, int kz) const noexcept;
  /// True when (kx, kz) survives the dealias mask (the zero mode does not).
  bool retained(int kx, int kz) const noexcept;

  /// 2*pi*kx per spectral slot.
  std::span<const double> wavenumber_x() const noexcept;
  /// 2*pi*kz per spectral slot.
  std::span<const double> wavenumber_z() const noexcept;
  /// 4*pi^2*|k|^2 per spectral slot (unmasked).
  std::span<const double> laplacian_eigenvalue() const noexcept;
  /// 1 for retained slots, 0 for the zero mode and dealiased slots.
  std::span<const double> mask() const noexcept;
  /// Number of full-plane modes a retained slot stands for (2 if kx > 0, else 1); 0 if masked.
  std::span<const double> multiplicity() const noexcept;

  bool operator==(const WaveGrid& other) const noexcept { return n_ == other.n_; }

 private:
  int n_;
  std::shared_ptr<const Tables> tables_;
};

/// Throws GridMismatch unless both grids coincide.
inline void require_same_grid(const WaveGrid& a, const WaveGrid& b) {
  if (!(a == b)) throw GridMismatch(a.resolution(), b.resolution());
}

}  // namespace thcs
