#include "thcs/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "thcs/kernels.hpp"
#include "thcs/transform.hpp"

namespace thcs {
namespace {

SpectralField apply_real_weights(const SpectralField& s, std::span<const double> w) {
  AlignedVector<Complex> out(s.coefficients().size());
  kernels::active().scale_real(kernels::as_doubles(s.coefficients()), w.data(),
                               reinterpret_cast<double*>(out.data()), out.size());
  return SpectralField(s.grid(), std::move(out));
}

SpectralField apply_imag_weights(const SpectralField& s, std::span<const double> w) {
  AlignedVector<Complex> out(s.coefficients().size());
  kernels::active().scale_imag(kernels::as_doubles(s.coefficients()), w.data(),
                               reinterpret_cast<double*>(out.data()), out.size());
  return SpectralField(s.grid(), std::move(out));
}

double weighted_sum(const SpectralField& s, std::span<const double> w) {
  return kernels::active().weighted_norm2(kernels::as_doubles(s.coefficients()), w.data(),
                                          s.coefficients().size());
}

// Builds multiplicity * f(eigenvalue) over retained slots.
template <class Fn>
AlignedVector<double> mode_weights(const WaveGrid& g, Fn&& f) {
  const auto eig = g.laplacian_eigenvalue();
  const auto mult = g.multiplicity();
  AlignedVector<double> w(eig.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (mult[i] != 0.0) w[i] = mult[i] * f(eig[i]);
  }
  return w;
}

}  // namespace

SpectralField partial_derivative(const SpectralField& s, Axis axis, int order) {
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  const auto k = axis == Axis::x ? s.grid().wavenumber_x() : s.grid().wavenumber_z();
  // Repeated first-order application, so composing derivatives is bitwise exact.
  SpectralField out = apply_imag_weights(s, k);
  for (int i = 1; i < order; ++i) out = apply_imag_weights(out, k);
  return out;
}

SpectralField laplacian(const SpectralField& s) {
  const auto eig = s.grid().laplacian_eigenvalue();
  AlignedVector<double> w(eig.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -eig[i];
  return apply_real_weights(s, w);
}

SpectralField inverse_laplacian(const SpectralField& s) {
  const auto eig = s.grid().laplacian_eigenvalue();
  AlignedVector<double> w(eig.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = eig[i] > 0.0 ? -1.0 / eig[i] : 0.0;
  return apply_real_weights(s, w);
}

SpectralField jacobian(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  const PhysicalField ax = inverse_transform(partial_derivative(a, Axis::x));
  const PhysicalField az = inverse_transform(partial_derivative(a, Axis::z));
  const PhysicalField bx = inverse_transform(partial_derivative(b, Axis::x));
  const PhysicalField bz = inverse_transform(partial_derivative(b, Axis::z));
  PhysicalField product(a.grid());
  kernels::active().cross_difference(ax.values().data(), bz.values().data(), az.values().data(),
                                     bx.values().data(), product.values().data(),
                                     product.values().size());
  return forward_transform(product);
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  const auto mult = a.grid().multiplicity();
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  double sum = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (mult[i] != 0.0) sum += mult[i] * (ca[i].real() * cb[i].real() + ca[i].imag() * cb[i].imag());
  }
  return sum;
}

double sobolev_norm(const SpectralField& s, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("sobolev order must be nonnegative");
  const auto w = mode_weights(s.grid(), [r](double lam) { return std::pow(lam, r); });
  return std::sqrt(weighted_sum(s, w));
}

double h2_norm(const SpectralField& s) {
  const auto w = mode_weights(s.grid(), [](double lam) { return 1.0 + lam + lam * lam; });
  return std::sqrt(weighted_sum(s, w));
}

double lp_norm(const SpectralField& s, int p) {
  if (p != 2 && p != 4) throw std::invalid_argument("lp_norm supports p = 2 or 4, got " + std::to_string(p));
  const PhysicalField u = inverse_transform(s);
  const auto v = u.values();
  const double count = static_cast<double>(v.size());
  if (p == 2) return std::sqrt(kernels::active().sum_squares(v.data(), v.size()) / count);
  return std::pow(kernels::active().sum_fourth_powers(v.data(), v.size()) / count, 0.25);
}

double fractional_operator_norm(const SpectralField& s, double gamma, double nu) {
  if (!(gamma >= 0.0 && gamma <= 1.5)) throw std::invalid_argument("gamma must lie in [0, 3/2]");
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  const auto w = mode_weights(s.grid(), [=](double lam) { return std::pow(nu * lam, 2.0 * gamma); });
  return std::sqrt(weighted_sum(s, w));
}

}  // namespace thcs
