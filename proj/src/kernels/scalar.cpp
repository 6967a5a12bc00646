#include <cmath>

#include "thcs/kernels.hpp"

namespace thcs::kernels {
namespace {

void cross_difference(const double* ax, const double* bz, const double* az, const double* bx,
                      double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ax[i] * bz[i] - az[i] * bx[i];
}

void scale_real(const double* in, const double* w, double* out, std::size_t nc) {
  for (std::size_t i = 0; i < nc; ++i) {
    out[2 * i] = w[i] * in[2 * i];
    out[2 * i + 1] = w[i] * in[2 * i + 1];
  }
}

void scale_imag(const double* in, const double* w, double* out, std::size_t nc) {
  for (std::size_t i = 0; i < nc; ++i) {
    const double re = in[2 * i];
    const double im = in[2 * i + 1];
    out[2 * i] = -(w[i] * im);
    out[2 * i + 1] = w[i] * re;
  }
}

void propagate(const double* q, const double* k, const double* e, double h, double* out,
               std::size_t nc) {
  for (std::size_t i = 0; i < nc; ++i) {
    out[2 * i] = e[i] * (q[2 * i] + h * k[2 * i]);
    out[2 * i + 1] = e[i] * (q[2 * i + 1] + h * k[2 * i + 1]);
  }
}

void propagate_combine(const double* q, const double* k1, const double* k2, const double* e,
                       double h, double* out, std::size_t nc) {
  for (std::size_t i = 0; i < nc; ++i) {
    out[2 * i] = e[i] * (q[2 * i] + h * k1[2 * i]) + h * k2[2 * i];
    out[2 * i + 1] = e[i] * (q[2 * i + 1] + h * k1[2 * i + 1]) + h * k2[2 * i + 1];
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double weighted_norm2(const double* c, const double* w, std::size_t nc) {
  double sum = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    sum += w[i] * (c[2 * i] * c[2 * i] + c[2 * i + 1] * c[2 * i + 1]);
  }
  return sum;
}

double sum_squares(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

double sum_fourth_powers(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = x[i] * x[i];
    sum += s * s;
  }
  return sum;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{Backend::scalar, cross_difference, scale_real,   scale_imag,
                                 propagate,       propagate_combine, axpy,        weighted_norm2,
                                 sum_squares,     sum_fourth_powers, max_abs,     all_finite};
  return table;
}

}  // namespace thcs::kernels
