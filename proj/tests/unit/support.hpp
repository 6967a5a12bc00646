#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "thcs/random_fields.hpp"
#include "thcs/transform.hpp"

namespace testing {

inline thcs::SpectralField sampled(const thcs::WaveGrid& grid, double (*fn)(double, double)) {
  return thcs::forward_transform(thcs::PhysicalField::sample(grid, fn));
}

inline double sin_x(double x, double) { return std::sin(thcs::kTwoPi * x); }
inline double cos_x(double x, double) { return std::cos(thcs::kTwoPi * x); }
inline double sin_z(double, double z) { return std::sin(thcs::kTwoPi * z); }
inline double sin_xz(double x, double z) { return std::sin(thcs::kTwoPi * x) * std::sin(thcs::kTwoPi * z); }
inline double cos_xz(double x, double z) { return std::cos(thcs::kTwoPi * x) * std::cos(thcs::kTwoPi * z); }

inline double max_abs_diff(const thcs::SpectralField& a, const thcs::SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  }
  return m;
}

inline double max_abs(const thcs::SpectralField& a) {
  double m = 0.0;
  for (const auto& c : a.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

inline thcs::SpectralField random_field(const thcs::WaveGrid& grid, std::mt19937_64& rng) {
  thcs::RandomBandOptions opts;
  opts.band = std::uniform_int_distribution<int>(1, std::min(12, grid.cutoff()))(rng);
  opts.spectral_slope = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  return thcs::random_band_field(grid, rng, opts);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("thcs_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
