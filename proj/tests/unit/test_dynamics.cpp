#include <doctest.h>

#include "support.hpp"
#include "thcs/dynamics.hpp"
#include "thcs/spectral_ops.hpp"

using namespace thcs;
using testing::sampled;

namespace {

ModelParams params(int n = 32, double nu = 0.05, double pr = 1.0, double n2 = 1.0) {
  ModelParams p;
  p.grid = WaveGrid(n);
  p.nu = nu;
  p.prandtl = pr;
  p.n_squared = n2;
  return p;
}

}  // namespace

TEST_CASE("model parameters are validated by name") {
  ModelParams p = params();
  p.nu = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("model.nu"), std::invalid_argument);
  p = params();
  p.prandtl = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("model.prandtl"), std::invalid_argument);
}

TEST_CASE("vorticity right-hand side") {
  const ModelParams p = params();
  const SpectralField zero(p.grid);
  CHECK(vorticity_rhs(State(p.grid), p, zero).is_zero());

  const State a(zero, sampled(p.grid, testing::sin_x), 0.0);
  CHECK(testing::max_abs_diff(vorticity_rhs(a, p, zero), kTwoPi * sampled(p.grid, testing::cos_x)) < 1e-12);

  const State b(sampled(p.grid, testing::sin_z), zero, 0.0);
  CHECK(testing::max_abs_diff(vorticity_rhs(b, p, zero), (-4.0 * kPi * kPi * p.nu) * sampled(p.grid, testing::sin_z)) <
        1e-12);

  const SpectralField f = sampled(p.grid, testing::cos_xz);
  CHECK(testing::max_abs_diff(vorticity_rhs(State(p.grid), p, f), f) == 0.0);
}

TEST_CASE("density right-hand side") {
  const ModelParams p = params(32, 0.05, 2.0, 3.0);
  const SpectralField zero(p.grid);
  CHECK(density_rhs(State(p.grid), p).is_zero());

  const State a(sampled(p.grid, testing::sin_x), zero, 0.0);
  CHECK(testing::max_abs_diff(density_rhs(a, p), (p.n_squared / kTwoPi) * sampled(p.grid, testing::cos_x)) < 1e-13);

  const State b(zero, sampled(p.grid, testing::sin_z), 0.0);
  CHECK(testing::max_abs_diff(density_rhs(b, p), (-4.0 * kPi * kPi * p.nu / p.prandtl) * sampled(p.grid, testing::sin_z)) <
        1e-12);
}

TEST_CASE("explicit tendencies agree with the full right-hand sides minus diffusion") {
  const ModelParams p = params(32, 0.05, 2.0, 1.5);
  const State s = random_band_state(p, 12, 1.0);
  const SpectralField f = sampled(p.grid, testing::cos_xz);
  const Tendencies t = explicit_tendencies(s, p, f);
  const SpectralField w = vorticity_rhs(s, p, f) - p.nu * laplacian(s.omega);
  const SpectralField r = density_rhs(s, p) - p.density_diffusivity() * laplacian(s.rho);
  CHECK(testing::max_abs_diff(t.omega, w) <= 1e-12 * testing::max_abs(w));
  CHECK(testing::max_abs_diff(t.rho, r) <= 1e-12 * testing::max_abs(r));
}

TEST_CASE("a single z-mode decays by the exact propagator") {
  const ModelParams p = params(32, 0.05);
  const State s(sampled(p.grid, testing::sin_z), SpectralField(p.grid), 0.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  const State next = step(s, p, ForcingSpec(p.grid), ctrl);
  const double factor = std::exp(-4.0 * kPi * kPi * p.nu * ctrl.dt);
  CHECK(testing::max_abs_diff(next.omega, factor * s.omega) < 1e-14);
  CHECK(next.rho.is_zero());
  CHECK(next.time == doctest::Approx(0.01));
}

TEST_CASE("steps keep the zero mode at exactly zero and psi recoverable") {
  const ModelParams p = params(32, 0.01, 2.0, 1.0);
  State s = random_band_state(p, 99, 2.0);
  StepControl ctrl;
  ctrl.dt = 2e-3;
  ForcingSpec f(p.grid);
  f.add(mode_field(p.grid, 2, 1, Parity::cosine, Parity::sine, 3.0), TemporalWaveform::cosine(5.0));
  for (int i = 0; i < 20; ++i) {
    s = step(s, p, f, ctrl);
    REQUIRE(s.omega.coefficients()[0] == Complex(0.0, 0.0));
    REQUIRE(s.rho.coefficients()[0] == Complex(0.0, 0.0));
    REQUIRE(testing::max_abs_diff(laplacian(inverse_laplacian(s.omega)), s.omega) <=
            1e-12 * testing::max_abs(s.omega));
  }
}

TEST_CASE("time stepping converges at second order") {
  const ModelParams p = params(32, 0.02, 1.5, 1.0);
  const State s0 = random_band_state(p, 31, 1.0);
  const ForcingSpec none(p.grid);
  auto run = [&](double dt) {
    StepControl ctrl;
    ctrl.dt = dt;
    return simulate(s0, p, none, ctrl, 0.2, 1000000).final_state;
  };
  const double base = 0.01;
  const State ref = run(base / 64);
  auto err = [&](const State& s) {
    return sobolev_norm(s.omega - ref.omega, 0) + sobolev_norm(s.rho - ref.rho, 0);
  };
  const double e1 = err(run(base));
  const double e2 = err(run(base / 2));
  const double order = std::log2(e1 / e2);
  MESSAGE("observed order " << order);
  CHECK(order >= 1.9);
}

TEST_CASE("unforced simulation dissipates energy and is deterministic") {
  const ModelParams p = params(32, 0.05, 2.0, 1.0);
  const State s0 = random_band_state(p, 8, 1.0);
  StepControl ctrl;
  ctrl.dt = 0.005;
  const auto a = simulate(s0, p, ForcingSpec(p.grid), ctrl, 1.0, 2);
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    REQUIRE(a.records[i].energy <= a.records[i - 1].energy + 1e-10 * a.records[0].energy);
  }
  const auto b = simulate(s0, p, ForcingSpec(p.grid), ctrl, 1.0, 2);
  CHECK(a.records == b.records);
  CHECK(a.records.back().time == 1.0);
  CHECK(a.records.size() == 101);
}

TEST_CASE("step counts tolerate round-off") {
  CHECK(step_count(0.0, 1.0, 0.1) == 10);
  CHECK(step_count(0.0, 1.0, 0.3) == 4);
  CHECK(step_count(0.0, 5.0, 0.00125) == 4000);
  CHECK(step_count(0.0, 1e-9, 1.0) == 1);
}

TEST_CASE("oversized step diverges with the partial record stream") {
  const ModelParams p = params(32, 1e-4, 1.0, 400.0);
  const State s0 = random_band_state(p, 1, 10.0);
  StepControl ctrl;
  ctrl.dt = 0.5;
  try {
    simulate(s0, p, ForcingSpec(p.grid), ctrl, 1000.0, 1);
    FAIL("expected divergence");
  } catch (const SimulationDiverged& e) {
    CHECK(e.time() > 0.0);
    CHECK_FALSE(e.partial_records().empty());
    CHECK(std::string(e.what()).find("diverged at t=") != std::string::npos);
  }
}

TEST_CASE("simulate rejects bad arguments") {
  const ModelParams p = params();
  StepControl ctrl;
  CHECK_THROWS_AS(simulate(State(p.grid), p, ForcingSpec(p.grid), ctrl, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate(State(p.grid), p, ForcingSpec(p.grid), ctrl, 1.0, 0), std::invalid_argument);
  ctrl.dt = -1.0;
  CHECK_THROWS_AS(simulate(State(p.grid), p, ForcingSpec(p.grid), ctrl, 1.0, 1), std::invalid_argument);
}

TEST_CASE("CFL step scales with the velocity") {
  const ModelParams p = params();
  const State s = single_mode_state(p, 1, 0, 1.0);
  StepControl ctrl;
  const double dt1 = cfl_time_step(s, ctrl);
  State s4(4.0 * s.omega, s.rho, 0.0);
  CHECK(cfl_time_step(s4, ctrl) == doctest::Approx(dt1 / 4.0).epsilon(1e-12));
  CHECK(max_velocity(State(p.grid)) == 0.0);
}
