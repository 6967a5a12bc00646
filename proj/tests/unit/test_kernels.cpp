#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "support.hpp"
#include "thcs/dynamics.hpp"
#include "thcs/kernels.hpp"

using namespace thcs;
using kernels::Backend;

namespace {

std::vector<double> randoms(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool bitwise(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar backend is always available and selectable") {
  CHECK(kernels::available(Backend::scalar));
  kernels::ScopedBackend scoped(Backend::scalar);
  CHECK(kernels::active().backend == Backend::scalar);
}

TEST_CASE("unavailable backend is rejected") {
  if (kernels::available(Backend::avx2)) return;
  CHECK_THROWS_AS(kernels::select(Backend::avx2), Error);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const kernels::KernelTable* simd = kernels::avx2_table();
  if (simd == nullptr || !kernels::cpu_has_avx2()) {
    MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
    return;
  }
  const kernels::KernelTable& ref = kernels::scalar_table();
  std::mt19937_64 rng(2024);
  // Odd lengths exercise the scalar tails.
  for (std::size_t nc : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{8}, std::size_t{61},
                         std::size_t{1057}}) {
    const std::size_t nd = 2 * nc;
    const auto a = randoms(rng, nd), b = randoms(rng, nd), c = randoms(rng, nd), d = randoms(rng, nd);
    const auto w = randoms(rng, nc);
    std::vector<double> o1(nd), o2(nd);

    ref.cross_difference(a.data(), b.data(), c.data(), d.data(), o1.data(), nd);
    simd->cross_difference(a.data(), b.data(), c.data(), d.data(), o2.data(), nd);
    CHECK(bitwise(o1, o2));

    ref.scale_real(a.data(), w.data(), o1.data(), nc);
    simd->scale_real(a.data(), w.data(), o2.data(), nc);
    CHECK(bitwise(o1, o2));

    ref.scale_imag(a.data(), w.data(), o1.data(), nc);
    simd->scale_imag(a.data(), w.data(), o2.data(), nc);
    CHECK(bitwise(o1, o2));

    ref.propagate(a.data(), b.data(), w.data(), 0.37, o1.data(), nc);
    simd->propagate(a.data(), b.data(), w.data(), 0.37, o2.data(), nc);
    CHECK(bitwise(o1, o2));

    ref.propagate_combine(a.data(), b.data(), c.data(), w.data(), 0.37, o1.data(), nc);
    simd->propagate_combine(a.data(), b.data(), c.data(), w.data(), 0.37, o2.data(), nc);
    CHECK(bitwise(o1, o2));

    o1 = c;
    o2 = c;
    ref.axpy(-1.25, a.data(), o1.data(), nd);
    simd->axpy(-1.25, a.data(), o2.data(), nd);
    CHECK(bitwise(o1, o2));

    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-13 * std::max(1.0, std::abs(x)); };
    std::vector<double> wpos(nc);
    for (std::size_t i = 0; i < nc; ++i) wpos[i] = std::abs(w[i]);
    CHECK(close(ref.weighted_norm2(a.data(), wpos.data(), nc), simd->weighted_norm2(a.data(), wpos.data(), nc)));
    CHECK(close(ref.sum_squares(a.data(), nd), simd->sum_squares(a.data(), nd)));
    CHECK(close(ref.sum_fourth_powers(a.data(), nd), simd->sum_fourth_powers(a.data(), nd)));
    CHECK(ref.max_abs(a.data(), nd) == simd->max_abs(a.data(), nd));
    CHECK(ref.all_finite(a.data(), nd) == simd->all_finite(a.data(), nd));
    if (nd > 0) {
      for (double bad : {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()}) {
        auto e = a;
        e[nd - 1] = bad;
        CHECK_FALSE(ref.all_finite(e.data(), nd));
        CHECK_FALSE(simd->all_finite(e.data(), nd));
        e[nd - 1] = a[nd - 1];
        e[0] = -bad;
        CHECK_FALSE(simd->all_finite(e.data(), nd));
      }
    }
  }
}

TEST_CASE("solver steps are bit-identical under both backends") {
  if (!kernels::available(Backend::avx2)) return;
  ModelParams p;
  p.grid = WaveGrid(32);
  const State s0 = random_band_state(p, 4, 1.0);
  StepControl ctrl;
  ctrl.dt = 1e-3;
  const ForcingSpec none(p.grid);
  State a = s0, b = s0;
  {
    kernels::ScopedBackend scoped(Backend::scalar);
    for (int i = 0; i < 5; ++i) a = step(a, p, none, ctrl);
  }
  {
    kernels::ScopedBackend scoped(Backend::avx2);
    for (int i = 0; i < 5; ++i) b = step(b, p, none, ctrl);
  }
  CHECK(a.omega == b.omega);
  CHECK(a.rho == b.rho);
}
