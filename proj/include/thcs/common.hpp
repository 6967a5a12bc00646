#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace thcs {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Smallest nonzero eigenvalue of -Laplacian on the zero-mean periodic unit square.
inline constexpr double kLambda1 = 4.0 * std::numbers::pi * std::numbers::pi;

/// Cache-line aligned storage; FFTW plans are built against the same alignment.
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Align}));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{Align}); }

  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const noexcept {
    return true;
  }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
 public:
  explicit GridMismatch(int a, int b)
      : Error("grid mismatch: resolution " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class HermitianViolation : public Error {
 public:
  explicit HermitianViolation(double residue)
      : Error("spectral field violates Hermitian symmetry (imaginary residue " +
              std::to_string(residue) + ")"),
        residue_(residue) {}
  double residue() const noexcept { return residue_; }

 private:
  double residue_;
};

}  // namespace thcs
