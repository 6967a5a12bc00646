#pragma once

#include "thcs/spectral_field.hpp"

namespace thcs {

enum class Axis { x, z };

/// Multiplies each coefficient by (2 pi i k_axis)^order. order >= 1.
SpectralField partial_derivative(const SpectralField& s, Axis axis, int order = 1);

/// Multiplies by -4 pi^2 |k|^2.
SpectralField laplacian(const SpectralField& s);
/// Multiplies by -1 / (4 pi^2 |k|^2); the zero mode stays zero.
SpectralField inverse_laplacian(const SpectralField& s);

/// Dealiased pseudo-spectral J(a, b) = a_x b_z - a_z b_x.
///
/// With the two-thirds mask, quadratic products of retained modes alias only
/// onto discarded modes, so the integral identities
///   int J(f,g) h = -int J(f,h) g,   int J(f,g) g = 0
/// hold to round-off.
SpectralField jacobian(const SpectralField& a, const SpectralField& b);

/// Exact L2 pairing int_D a b via Parseval.
double inner_product(const SpectralField& a, const SpectralField& b);

/// (sum_k (4 pi^2 |k|^2)^r |c_k|^2)^(1/2). r = 0, 1, 2, 3 give ||u||, ||grad u||,
/// ||lap u||, ||grad lap u||. Throws std::invalid_argument for r < 0.
double sobolev_norm(const SpectralField& s, double r);

/// (||u||^2 + ||grad u||^2 + ||lap u||^2)^(1/2).
double h2_norm(const SpectralField& s);

/// Collocation-quadrature L^p norm, p in {2, 4}; throws std::invalid_argument otherwise.
double lp_norm(const SpectralField& s, int p);

/// ||A^gamma u|| with A = -nu * Laplacian, gamma in [0, 3/2], nu > 0.
double fractional_operator_norm(const SpectralField& s, double gamma, double nu);

}  // namespace thcs
