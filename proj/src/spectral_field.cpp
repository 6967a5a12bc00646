#include "thcs/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "thcs/kernels.hpp"

namespace thcs {

SpectralField::SpectralField(WaveGrid grid)
    : grid_(std::move(grid)), coefficients_(grid_.spectral_size(), Complex{}) {}

SpectralField::SpectralField(WaveGrid grid, AlignedVector<Complex> coefficients)
    : grid_(std::move(grid)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != grid_.spectral_size()) {
    throw std::invalid_argument("spectral coefficient count does not match grid");
  }
  project();
}

void SpectralField::project() noexcept {
  const auto mask = grid_.mask();
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (mask[i] == 0.0) coefficients_[i] = Complex{};
  }
}

Complex SpectralField::coefficient(int kx, int kz) const noexcept {
  if (kx < 0) return std::conj(coefficient(-kx, -kz));
  const auto idx = grid_.index_of(kx, kz);
  return idx ? coefficients_[*idx] : Complex{};
}

double SpectralField::hermitian_residue() const noexcept {
  const int n = grid_.resolution();
  double residue = 0.0;
  for (int row = 0; row < n; ++row) {
    const int partner = (n - row) % n;
    const Complex a = coefficients_[grid_.index(row, 0)];
    const Complex b = std::conj(coefficients_[grid_.index(partner, 0)]);
    residue = std::max(residue, std::abs(a - b) / 2.0);
  }
  return residue;
}

SpectralField SpectralField::symmetrized() const {
  SpectralField out = *this;
  const int n = grid_.resolution();
  for (int row = 0; row < n; ++row) {
    const int partner = (n - row) % n;
    if (partner < row) continue;
    const std::size_t i = grid_.index(row, 0);
    const std::size_t j = grid_.index(partner, 0);
    const Complex avg = 0.5 * (coefficients_[i] + std::conj(coefficients_[j]));
    out.coefficients_[i] = avg;
    out.coefficients_[j] = std::conj(avg);
  }
  out.project();
  return out;
}

bool SpectralField::is_zero() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  kernels::active().axpy(1.0, kernels::as_doubles(other.coefficients()),
                         kernels::as_doubles(std::span<Complex>(coefficients_)),
                         2 * coefficients_.size());
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  kernels::active().axpy(-1.0, kernels::as_doubles(other.coefficients()),
                         kernels::as_doubles(std::span<Complex>(coefficients_)),
                         2 * coefficients_.size());
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coefficients_) c *= s;
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) noexcept {
  return a.grid_ == b.grid_ &&
         std::memcmp(a.coefficients_.data(), b.coefficients_.data(),
                     a.coefficients_.size() * sizeof(Complex)) == 0;
}

PhysicalField::PhysicalField(WaveGrid grid)
    : grid_(std::move(grid)), values_(grid_.physical_size(), 0.0) {}

PhysicalField::PhysicalField(WaveGrid grid, AlignedVector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.physical_size()) {
    throw std::invalid_argument("physical value count does not match grid");
  }
}

double PhysicalField::mean() const noexcept {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

}  // namespace thcs
