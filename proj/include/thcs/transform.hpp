#pragma once

#include "thcs/spectral_field.hpp"

namespace thcs {

/// Physical -> spectral. The mean and dealiased modes are projected out silently
/// (the removed mean is logged at debug level). Result is exactly Hermitian.
SpectralField forward_transform(const PhysicalField& p);

/// Spectral -> physical. Throws HermitianViolation when the imaginary residue
/// exceeds 1e-9 relative to the largest coefficient magnitude (or 1e-9 absolute
/// for fields below unit size); smaller residues are discarded.
PhysicalField inverse_transform(const SpectralField& s);

inline constexpr double kHermitianTolerance = 1e-9;

}  // namespace thcs
