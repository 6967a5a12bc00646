#include "thcs/grid.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace thcs {

struct WaveGrid::Tables {
  AlignedVector<double> kx, kz, eigen, mask, multiplicity;
};

namespace {

std::shared_ptr<const WaveGrid::Tables> build_tables(const WaveGrid& g) {
  auto t = std::make_shared<WaveGrid::Tables>();
  const std::size_t size = g.spectral_size();
  t->kx.resize(size);
  t->kz.resize(size);
  t->eigen.resize(size);
  t->mask.resize(size);
  t->multiplicity.resize(size);
  const int n = g.resolution();
  for (int row = 0; row < n; ++row) {
    const int kz = g.kz_of_row(row);
    for (int col = 0; col < g.columns(); ++col) {
      const std::size_t i = g.index(row, col);
      const int kx = col;
      t->kx[i] = kTwoPi * kx;
      t->kz[i] = kTwoPi * kz;
      t->eigen[i] = kLambda1 * static_cast<double>(kx * kx + kz * kz);
      const bool keep = g.retained(kx, kz);
      t->mask[i] = keep ? 1.0 : 0.0;
      t->multiplicity[i] = keep ? (kx > 0 ? 2.0 : 1.0) : 0.0;
    }
  }
  return t;
}

std::shared_ptr<const WaveGrid::Tables> cached_tables(const WaveGrid& g) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const WaveGrid::Tables>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[g.resolution()];
  if (!slot) slot = build_tables(g);
  return slot;
}

}  // namespace

WaveGrid::WaveGrid(int resolution) : n_(resolution) {
  if (resolution < 16 || (resolution & (resolution - 1)) != 0) {
    throw std::invalid_argument("grid resolution must be a power of two >= 16, got " +
                                std::to_string(resolution));
  }
  tables_ = cached_tables(*this);
}

std::optional<std::size_t> WaveGrid::index_of(int kx, int kz) const noexcept {
  if (kx < 0 || kx > n_ / 2 || kz < -n_ / 2 || kz > n_ / 2) return std::nullopt;
  return index(row_of_kz(kz) % n_, kx);
}

bool WaveGrid::retained(int kx, int kz) const noexcept {
  if (kx == 0 && kz == 0) return false;
  return std::abs(kx) <= cutoff() && std::abs(kz) <= cutoff();
}

std::span<const double> WaveGrid::wavenumber_x() const noexcept { return tables_->kx; }
std::span<const double> WaveGrid::wavenumber_z() const noexcept { return tables_->kz; }
std::span<const double> WaveGrid::laplacian_eigenvalue() const noexcept { return tables_->eigen; }
std::span<const double> WaveGrid::mask() const noexcept { return tables_->mask; }
std::span<const double> WaveGrid::multiplicity() const noexcept { return tables_->multiplicity; }

}  // namespace thcs
