// Compiled with -mavx2 (no FMA) so products round exactly like the scalar loops.
#include <immintrin.h>

#include <cmath>

#include "thcs/kernels.hpp"

namespace thcs::kernels {
namespace {

// [w0, w0, w1, w1] for two consecutive complex entries.
inline __m256d broadcast_pair(const double* w) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void cross_difference(const double* ax, const double* bz, const double* az, const double* bx,
                      double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(ax + i), _mm256_loadu_pd(bz + i));
    const __m256d q = _mm256_mul_pd(_mm256_loadu_pd(az + i), _mm256_loadu_pd(bx + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(p, q));
  }
  for (; i < n; ++i) out[i] = ax[i] * bz[i] - az[i] * bx[i];
}

void scale_real(const double* in, const double* w, double* out, std::size_t nc) {
  std::size_t i = 0;
  for (; i + 2 <= nc; i += 2) {
    _mm256_storeu_pd(out + 2 * i, _mm256_mul_pd(broadcast_pair(w + i), _mm256_loadu_pd(in + 2 * i)));
  }
  for (; i < nc; ++i) {
    out[2 * i] = w[i] * in[2 * i];
    out[2 * i + 1] = w[i] * in[2 * i + 1];
  }
}

void scale_imag(const double* in, const double* w, double* out, std::size_t nc) {
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= nc; i += 2) {
    const __m256d swapped = _mm256_permute_pd(_mm256_loadu_pd(in + 2 * i), 0x5);
    const __m256d prod = _mm256_mul_pd(broadcast_pair(w + i), swapped);
    _mm256_storeu_pd(out + 2 * i, _mm256_xor_pd(prod, sign));
  }
  for (; i < nc; ++i) {
    const double re = in[2 * i];
    const double im = in[2 * i + 1];
    out[2 * i] = -(w[i] * im);
    out[2 * i + 1] = w[i] * re;
  }
}

void propagate(const double* q, const double* k, const double* e, double h, double* out,
               std::size_t nc) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 2 <= nc; i += 2) {
    const __m256d inner =
        _mm256_add_pd(_mm256_loadu_pd(q + 2 * i), _mm256_mul_pd(hv, _mm256_loadu_pd(k + 2 * i)));
    _mm256_storeu_pd(out + 2 * i, _mm256_mul_pd(broadcast_pair(e + i), inner));
  }
  for (; i < nc; ++i) {
    out[2 * i] = e[i] * (q[2 * i] + h * k[2 * i]);
    out[2 * i + 1] = e[i] * (q[2 * i + 1] + h * k[2 * i + 1]);
  }
}

void propagate_combine(const double* q, const double* k1, const double* k2, const double* e,
                       double h, double* out, std::size_t nc) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 2 <= nc; i += 2) {
    const __m256d inner =
        _mm256_add_pd(_mm256_loadu_pd(q + 2 * i), _mm256_mul_pd(hv, _mm256_loadu_pd(k1 + 2 * i)));
    const __m256d damped = _mm256_mul_pd(broadcast_pair(e + i), inner);
    _mm256_storeu_pd(out + 2 * i,
                     _mm256_add_pd(damped, _mm256_mul_pd(hv, _mm256_loadu_pd(k2 + 2 * i))));
  }
  for (; i < nc; ++i) {
    out[2 * i] = e[i] * (q[2 * i] + h * k1[2 * i]) + h * k2[2 * i];
    out[2 * i + 1] = e[i] * (q[2 * i + 1] + h * k1[2 * i + 1]) + h * k2[2 * i + 1];
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(av, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double weighted_norm2(const double* c, const double* w, std::size_t nc) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= nc; i += 2) {
    const __m256d v = _mm256_loadu_pd(c + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    // [|c0|^2, |c0|^2, |c1|^2, |c1|^2]
    const __m256d mod = _mm256_hadd_pd(sq, sq);
    const __m256d term = _mm256_mul_pd(broadcast_pair(w + i), mod);
    acc = _mm256_add_pd(acc, _mm256_blend_pd(zero, term, 0x5));
  }
  double sum = horizontal_sum(acc);
  for (; i < nc; ++i) sum += w[i] * (c[2 * i] * c[2 * i] + c[2 * i + 1] * c[2 * i + 1]);
  return sum;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

double sum_fourth_powers(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d s = _mm256_mul_pd(v, v);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(s, s));
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double s = x[i] * x[i];
    sum += s * s;
  }
  return sum;
}

double max_abs(const double* x, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), abs_mask));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  // x * 0 is NaN exactly when x is inf or NaN.
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), zero));
  if (_mm256_movemask_pd(_mm256_cmp_pd(acc, acc, _CMP_UNORD_Q)) != 0) return false;
  for (; i < n; ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
  static const KernelTable table{Backend::avx2, cross_difference, scale_real,   scale_imag,
                                 propagate,     propagate_combine, axpy,        weighted_norm2,
                                 sum_squares,   sum_fourth_powers, max_abs,     all_finite};
  return &table;
}

}  // namespace thcs::kernels
