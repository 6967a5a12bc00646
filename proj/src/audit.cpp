#include <cmath>
#include <random>

#include "thcs/diagnostics.hpp"
#include "thcs/parallel.hpp"
#include "thcs/random_fields.hpp"
#include "thcs/spectral_ops.hpp"

namespace thcs {
namespace {

struct TrialResult {
  int band = 0;
  double slope = 0.0;
  double jacobian_self = 0.0;
  double jacobian_antisymmetry = 0.0;
  double h2_ratio = 0.0;
  double l4_ratio = 0.0;
  double lipschitz = 0.0;
};

double h1_full(const SpectralField& u) {
  const double a = sobolev_norm(u, 0.0);
  const double b = sobolev_norm(u, 1.0);
  return std::sqrt(a * a + b * b);
}

TrialResult run_trial(const WaveGrid& grid, std::uint64_t seed, int trial, double nu) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  RandomBandOptions opts;
  opts.band = std::uniform_int_distribution<int>(1, std::min(12, grid.cutoff()))(rng);
  opts.spectral_slope = std::uniform_real_distribution<double>(0.0, 3.0)(rng);

  const SpectralField f = random_band_field(grid, rng, opts);
  const SpectralField g = random_band_field(grid, rng, opts);
  const SpectralField h = random_band_field(grid, rng, opts);
  const SpectralField v2 = random_band_field(grid, rng, opts);

  TrialResult r;
  r.band = opts.band;
  r.slope = opts.spectral_slope;

  const double nf = h1_full(f);
  const double ng = h1_full(g);
  const double nh = h1_full(h);
  const SpectralField jfg = jacobian(f, g);
  const SpectralField jfh = jacobian(f, h);
  r.jacobian_self = std::abs(inner_product(jfg, g)) / (nf * ng * ng);
  r.jacobian_antisymmetry =
      std::abs(inner_product(jfg, h) + inner_product(jfh, g)) / (nf * (ng + nh) * (ng + nh));

  r.h2_ratio = h2_norm(f) / sobolev_norm(f, 2.0);
  r.l4_ratio = lp_norm(f, 4) / std::sqrt(sobolev_norm(f, 0.0) * sobolev_norm(f, 1.0));

  // (u1, v1) = (f, g), (u2, v2) = (h, v2); map (u, v) -> J(lap^-1 u, v).
  const auto half = [nu](const SpectralField& u) { return fractional_operator_norm(u, 0.5, nu); };
  const SpectralField lhs = jacobian(inverse_laplacian(f), g) - jacobian(inverse_laplacian(h), v2);
  const double scale = (half(f) + half(h) + half(g) + half(v2)) * (half(f - h) + half(g - v2));
  r.lipschitz = sobolev_norm(lhs, 0.0) / scale;
  return r;
}

void track(AuditMaximum& m, double value, int trial, const TrialResult& r) {
  if (m.trial < 0 || value > m.value) {
    m.value = value;
    m.trial = trial;
    m.band = r.band;
    m.slope = r.slope;
  }
}

}  // namespace

InequalityAudit inequality_audit(const WaveGrid& grid, const AuditOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("audit needs at least one trial");
  std::vector<TrialResult> results(static_cast<std::size_t>(options.trials));
  parallel_for(results.size(), worker_count(options.threads), [&](std::size_t i) {
    results[i] = run_trial(grid, options.seed, static_cast<int>(i), options.nu);
  });

  InequalityAudit audit;
  audit.resolution = grid.resolution();
  audit.trials = options.trials;
  audit.seed = options.seed;
  audit.a1 = lemma_a1();
  audit.a2 = lemma_a2();
  audit.h2_ratio_min = results.front().h2_ratio;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const int t = static_cast<int>(i);
    track(audit.jacobian_self, r.jacobian_self, t, r);
    track(audit.jacobian_antisymmetry, r.jacobian_antisymmetry, t, r);
    track(audit.h2_ratio, r.h2_ratio, t, r);
    track(audit.l4_ratio, r.l4_ratio, t, r);
    track(audit.lipschitz, r.lipschitz, t, r);
    audit.h2_ratio_min = std::min(audit.h2_ratio_min, r.h2_ratio);
  }

  // Semigroup smoothing bound over the retained spectrum, a = nu lambda1 / 2.
  const double rate = options.nu * kLambda1 / 2.0;
  audit.semigroup_rate = rate;
  const auto eig = grid.laplacian_eigenvalue();
  const auto mask = grid.mask();
  double worst = 0.0;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5}) {
    const double k_alpha = a == 0.0 ? 1.0 : std::pow(2.0 * a / std::exp(1.0), a);
    for (int j = 0; j <= 240; ++j) {
      const double t = std::pow(10.0, -4.0 + 6.0 * j / 240.0);
      const double bound = k_alpha * std::pow(t, -a) * std::exp(-rate * t);
      for (std::size_t i = 0; i < eig.size(); ++i) {
        if (mask[i] == 0.0) continue;
        const double mu = options.nu * eig[i];
        worst = std::max(worst, std::pow(mu, a) * std::exp(-mu * t) / bound);
      }
    }
  }
  audit.semigroup_ratio = worst;
  return audit;
}

}  // namespace thcs
