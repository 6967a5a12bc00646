#include "thcs/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "thcs/kernels.hpp"
#include "thcs/log.hpp"

namespace thcs {
namespace {

// FFTW_ESTIMATE keeps plan selection deterministic run to run. Plans are shared
// between threads through the new-array execute API, which is thread safe;
// only planning itself is serialized.
class FourierPlan {
 public:
  explicit FourierPlan(int n) {
    AlignedVector<double> real(static_cast<std::size_t>(n) * n);
    AlignedVector<Complex> spec(static_cast<std::size_t>(n) * (n / 2 + 1));
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    forward_ = fftw_plan_dft_r2c_2d(n, n, real.data(), c, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    inverse_ = fftw_plan_dft_c2r_2d(n, n, c, real.data(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    if (forward_ == nullptr || inverse_ == nullptr) {
      throw Error("FFTW planning failed for N=" + std::to_string(n));
    }
  }
  ~FourierPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  FourierPlan(const FourierPlan&) = delete;
  FourierPlan& operator=(const FourierPlan&) = delete;

  void forward(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  void inverse(Complex* in, double* out) const {
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(in), out);
  }

 private:
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const FourierPlan& plan_for(int n) {
  static std::map<int, std::unique_ptr<FourierPlan>> plans;
  std::lock_guard lock(planner_mutex());
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<FourierPlan>(n);
  return *slot;
}

}  // namespace

SpectralField forward_transform(const PhysicalField& p) {
  const WaveGrid& grid = p.grid();
  const int n = grid.resolution();
  AlignedVector<Complex> coeffs(grid.spectral_size());
  plan_for(n).forward(p.values().data(), coeffs.data());

  const double scale = 1.0 / static_cast<double>(grid.physical_size());
  if (log::enabled(log::Level::debug)) {
    const double mean = coeffs[0].real() * scale;
    if (std::abs(mean) > 1e-12) log::debug("forward_transform: projected mean " + std::to_string(mean));
  }
  auto& k = kernels::active();
  AlignedVector<double> weights(grid.mask().begin(), grid.mask().end());
  for (double& w : weights) w *= scale;
  k.scale_real(reinterpret_cast<const double*>(coeffs.data()), weights.data(),
               reinterpret_cast<double*>(coeffs.data()), coeffs.size());

  // r2c output is Hermitian along kx = 0 only up to round-off; make it exact.
  for (int row = 1; row < n / 2; ++row) {
    const std::size_t i = grid.index(row, 0);
    const std::size_t j = grid.index(n - row, 0);
    const Complex avg = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
    coeffs[i] = avg;
    coeffs[j] = std::conj(avg);
  }
  return SpectralField(grid, std::move(coeffs));
}

PhysicalField inverse_transform(const SpectralField& s) {
  const WaveGrid& grid = s.grid();
  const double residue = s.hermitian_residue();
  if (residue > 0.0) {
    double largest = 0.0;
    for (const Complex& c : s.coefficients()) largest = std::max(largest, std::abs(c));
    if (residue > kHermitianTolerance * std::max(1.0, largest)) throw HermitianViolation(residue);
  }
  AlignedVector<Complex> scratch(s.coefficients().begin(), s.coefficients().end());
  AlignedVector<double> values(grid.physical_size());
  plan_for(grid.resolution()).inverse(scratch.data(), values.data());
  return PhysicalField(grid, std::move(values));
}

}  // namespace thcs
