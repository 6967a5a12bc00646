#include <doctest.h>

#include <random>

#include "support.hpp"
#include "thcs/experiments.hpp"

using namespace thcs;

namespace {

ModelParams params(int n, double nu, double pr, double n2) {
  ModelParams p;
  p.grid = WaveGrid(n);
  p.nu = nu;
  p.prandtl = pr;
  p.n_squared = n2;
  return p;
}

ForcingSpec template_spec(const WaveGrid& g, double amplitude) {
  ForcingSpec s(g);
  s.add(mode_field(g, 1, 0, Parity::cosine, Parity::cosine, 1.0), TemporalWaveform::constant());
  s.add(mode_field(g, 0, 1, Parity::cosine, Parity::cosine, amplitude), TemporalWaveform::cosine(1.0));
  return s;
}

}  // namespace

TEST_CASE("decay of single-mode data has the exact rate") {
  const ModelParams p = params(32, 0.05, 1.0, 1.0);
  StepControl ctrl;
  ctrl.dt = 2e-3;
  const auto r = run_decay_experiment(p, single_mode_state(p, 0, 1, 1.0), ctrl, 3.0, 5);
  REQUIRE(r.fits.at("energy").fit);
  CHECK(r.fits.at("energy").fit->rate == doctest::Approx(8.0 * kPi * kPi * 0.05).epsilon(0.01));
  CHECK(r.envelope_ok);
  CHECK(r.window.transient_cleared);
}

TEST_CASE("decay of random data stays inside the rigorous envelope") {
  const ModelParams p = params(32, 0.05, 2.0, 0.1);
  StepControl ctrl;
  ctrl.dt = 5e-3;
  const auto r = run_decay_experiment(p, random_band_state(p, 6, 1.0), ctrl, 6.0, 2);
  CHECK(r.envelope_ok);
  CHECK(r.paper_alpha_ok);
  CHECK(r.max_envelope_ratio <= 1.0 + kEnvelopeSlack);
  CHECK(r.certificate.beta_rigorous == doctest::Approx(2.0 * 0.05 * kLambda1 * 0.5));
  for (const auto& name : decay_fit_names()) {
    const auto& f = r.fits.at(name);
    REQUIRE_MESSAGE(f.fit, name << ": " << f.status);
    CHECK(f.fit->rate > 0.0);
  }
}

TEST_CASE("decay of zero data reports degenerate fits") {
  const ModelParams p = params(16, 0.05, 1.0, 1.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  const auto r = run_decay_experiment(p, State(p.grid), ctrl, 0.5, 1);
  for (const auto& name : decay_fit_names()) {
    CHECK(r.fits.at(name).status == "degenerate-zero");
    CHECK_FALSE(r.fits.at(name).fit);
  }
  for (const auto& rec : r.records) CHECK(rec.energy == 0.0);
  CHECK(r.envelope_ok);
}

TEST_CASE("difference_norm") {
  const ModelParams p = params(32, 1.0, 1.0, 1.0);
  const State a = random_band_state(p, 3, 1.0);
  CHECK(difference_norm(a, a, p) == 0.0);

  const double eps = 1e-3;
  const State b(a.omega, a.rho + mode_field(p.grid, 0, 1, Parity::cosine, Parity::sine, eps), 0.0);
  CHECK(difference_norm(a, b, p) == doctest::Approx(eps * kTwoPi / std::sqrt(2.0)).epsilon(1e-10));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const State x(testing::random_field(p.grid, rng), testing::random_field(p.grid, rng), 0.0);
    const State y(testing::random_field(p.grid, rng), testing::random_field(p.grid, rng), 0.0);
    const State z(testing::random_field(p.grid, rng), testing::random_field(p.grid, rng), 0.0);
    CHECK(difference_norm(x, z, p) <= difference_norm(x, y, p) + difference_norm(y, z, p) + 1e-12);
  }

  State later = a;
  later.time = 1.0;
  CHECK_THROWS_AS(difference_norm(a, later, p), std::invalid_argument);
  CHECK_THROWS_AS(difference_norm(a, State(WaveGrid(16)), p), GridMismatch);
}

TEST_CASE("averaging with purely constant forcing compares identical systems") {
  const ModelParams p = params(16, 0.1, 1.0, 1.0);
  ForcingSpec constant(p.grid);
  constant.add(mode_field(p.grid, 1, 0, Parity::cosine, Parity::cosine, 1.0), TemporalWaveform::constant());
  StepControl ctrl;
  ctrl.dt = 0.01;
  const auto r = run_averaging_experiment(p, random_band_state(p, 2, 0.1), constant, {4.0, 16.0}, 0.5, ctrl, 2);
  for (double e : r.sup_errors) CHECK(e <= 1e-12);
}

TEST_CASE("averaging with zero oscillatory amplitude stays at round-off") {
  const ModelParams p = params(16, 0.1, 1.0, 1.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  const auto r = run_averaging_experiment(p, random_band_state(p, 2, 0.1), template_spec(p.grid, 0.0), {4.0, 16.0},
                                          0.5, ctrl, 1);
  for (double e : r.sup_errors) CHECK(e <= 1e-12 * r.state_magnitude);
}

TEST_CASE("averaging errors shrink with eta and ignore the order of eta values") {
  const ModelParams p = params(16, 0.1, 1.0, 1.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  const State s0 = random_band_state(p, 5, 0.1);
  const auto a = run_averaging_experiment(p, s0, template_spec(p.grid, 1.0), {4.0, 16.0, 64.0}, 1.0, ctrl, 1);
  const auto b = run_averaging_experiment(p, s0, template_spec(p.grid, 1.0), {64.0, 4.0, 16.0}, 1.0, ctrl, 3);
  CHECK(a.monotone);
  CHECK(a.sup_errors == b.sup_errors);
  CHECK(a.eta_values == std::vector<double>{4.0, 16.0, 64.0});
  REQUIRE(a.fitted_order);
  CHECK(*a.fitted_order > 0.7);
  CHECK(*a.fitted_order < 1.3);
  CHECK(a.dt <= (kTwoPi / 64.0) / 20.0);
}

TEST_CASE("averaging rejects bad eta ladders") {
  const ModelParams p = params(16, 0.1, 1.0, 1.0);
  StepControl ctrl;
  const ForcingSpec s = template_spec(p.grid, 1.0);
  CHECK_THROWS_AS(run_averaging_experiment(p, State(p.grid), s, {}, 1.0, ctrl), std::invalid_argument);
  CHECK_THROWS_AS(run_averaging_experiment(p, State(p.grid), s, {0.5}, 1.0, ctrl), std::invalid_argument);
  CHECK_THROWS_AS(run_averaging_experiment(p, State(p.grid), s, {4.0, 4.0}, 1.0, ctrl), std::invalid_argument);
  CHECK_THROWS_AS(run_averaging_experiment(p, State(p.grid), s, {4.0}, 0.0, ctrl), std::invalid_argument);
}

TEST_CASE("averaging reports diverged runs instead of aborting") {
  const ModelParams p = params(16, 1e-4, 1.0, 400.0);
  ForcingSpec s(p.grid);
  s.add(mode_field(p.grid, 1, 0, Parity::cosine, Parity::cosine, 1.0), TemporalWaveform::cosine(1.0));
  StepControl ctrl;
  ctrl.dt = 1.0;
  const auto r = run_averaging_experiment(p, random_band_state(p, 1, 10.0), s, {1.0}, 400.0, ctrl, 1);
  REQUIRE(r.runs.size() == 1);
  CHECK(r.runs[0].diverged);
  CHECK(std::isnan(r.sup_errors[0]));
  CHECK_FALSE(r.fitted_order);
}
