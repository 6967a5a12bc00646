#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "thcs/common.hpp"

// Data-parallel inner loops of the spectral solver. Every kernel has a scalar
// reference and, on x86-64, an AVX2 variant picked at runtime. Elementwise
// kernels round identically in both backends; reductions differ only in
// summation order.
namespace thcs::kernels {

enum class Backend { scalar, avx2 };

std::string_view name(Backend b) noexcept;

/// Complex arrays are passed as interleaved (re, im) doubles; `nc` counts complex entries.
struct KernelTable {
  Backend backend;
  /// out = ax * bz - az * bx
  void (*cross_difference)(const double* ax, const double* bz, const double* az, const double* bx,
                           double* out, std::size_t n);
  /// out = w * in (real weight per complex entry)
  void (*scale_real)(const double* in, const double* w, double* out, std::size_t nc);
  /// out = i * w * in
  void (*scale_imag)(const double* in, const double* w, double* out, std::size_t nc);
  /// out = e * (q + h * k)
  void (*propagate)(const double* q, const double* k, const double* e, double h, double* out,
                    std::size_t nc);
  /// out = e * (q + h * k1) + h * k2
  void (*propagate_combine)(const double* q, const double* k1, const double* k2, const double* e,
                            double h, double* out, std::size_t nc);
  /// y = y + a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// sum w * |c|^2
  double (*weighted_norm2)(const double* c, const double* w, std::size_t nc);
  /// sum x^2
  double (*sum_squares)(const double* x, std::size_t n);
  /// sum x^4
  double (*sum_fourth_powers)(const double* x, std::size_t n);
  /// max |x|
  double (*max_abs)(const double* x, std::size_t n);
  bool (*all_finite)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variants were not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;
bool available(Backend b) noexcept;

/// Process-wide backend. Defaults to the best available, overridable with
/// THCS_SIMD=scalar|avx2.
const KernelTable& active() noexcept;
/// Throws thcs::Error if the backend is unavailable on this build or CPU.
void select(Backend b);

/// Restores the previously active backend on destruction.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b);
  ~ScopedBackend();
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

inline const double* as_doubles(std::span<const Complex> c) noexcept {
  return reinterpret_cast<const double*>(c.data());
}
inline double* as_doubles(std::span<Complex> c) noexcept {
  return reinterpret_cast<double*>(c.data());
}

}  // namespace thcs::kernels
