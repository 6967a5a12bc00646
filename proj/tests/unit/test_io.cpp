#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "thcs/cli.hpp"
#include "thcs/config.hpp"
#include "thcs/snapshot.hpp"
#include "thcs/timeseries.hpp"

using namespace thcs;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "thcs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
  const RunConfig c = parse_config("{}");
  CHECK(c.model.grid.resolution() == 128);
  CHECK(c.cfl_safety == 0.5);
  CHECK_FALSE(c.dt);
  CHECK(c.forcing.empty());
  CHECK(c.sample_every == 1);
  CHECK(c.averaging.eta_values == std::vector<double>{4.0, 16.0, 64.0, 256.0});
}

TEST_CASE("validation errors name the field") {
  try {
    parse_config(R"({"model": {"nu": -1}})");
    FAIL("expected a validation error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "model.nu");
    CHECK(std::string(e.what()).find("model.nu") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"resolution": 100}})"), doctest::Contains("grid.resolution"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"stepping": {"dt": 0.1, "cfl_safety": 0.5}})"), doctest::Contains("stepping"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"forcing": {"components": [{"k": [0, 1], "parity": "sine"}]}})"),
                       doctest::Contains("forcing.components[0].k"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"initial": {"kind": "single_mode", "mode": [0, 0]}})"),
                       doctest::Contains("initial.mode"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"output": {"t_end": "soon"}})"), doctest::Contains("output.t_end"),
                       ConfigError);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"model": {"viscocity": 0.1}})"), doctest::Contains("did you mean \"nu\""),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"modle": {}})"), doctest::Contains("did you mean \"model\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"output": {"sample_evry": 2}})"), doctest::Contains("sample_every"),
                       ConfigError);
  CHECK(suggest_key("zzzzzz", {"nu", "prandtl"}).empty());
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_config("{\n  \"model\": {\n    \"nu\": 0.1,\n  }\n}\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).rfind("line 4", 0) == 0);
  }
}

TEST_CASE("config echo reparses to the same config") {
  const std::string text = R"({
    "model": {"nu": 0.1, "prandtl": 2, "n_squared": 0.5},
    "grid": {"resolution": 32},
    "initial": {"kind": "single_mode", "mode": [1, 1], "energy": 2},
    "forcing": {"eta": 8, "components": [
      {"k": [1, 0], "amplitude": 1},
      {"k": [0, 1], "parity": ["cosine", "sine"], "amplitude": 0.5,
       "waveform": {"kind": "series", "terms": [{"amplitude": 1, "frequency": 2, "phase": 0.1}]}}]},
    "stepping": {"dt": 0.001},
    "output": {"t_end": 0.5, "sample_every": 10, "out_dir": "somewhere"},
    "averaging": {"eta_values": [2, 8], "horizon": 1}
  })";
  const RunConfig c = parse_config(text);
  const std::string echo = config_echo(c);
  CHECK(config_echo(parse_config(echo)) == echo);
  CHECK(c.forcing.size() == 2);
  CHECK(c.forcing[1].parity_z == Parity::sine);
  CHECK(c.forcing[1].waveform.kind == WaveformKind::finite_series);
  CHECK(*c.dt == 0.001);
  CHECK(build_step_control(c, build_initial_state(c)).dt == 0.001);
  CHECK(build_forcing(c).components().size() == 2);
}

TEST_CASE("CFL-derived step respects the forcing period") {
  const RunConfig c = parse_config(R"({"grid": {"resolution": 16},
    "forcing": {"eta": 100, "components": [{"k": [1, 0], "waveform": {"kind": "cosine"}}]},
    "initial": {"kind": "zero"}})");
  CHECK(build_step_control(c, build_initial_state(c)).dt <= (kTwoPi / 100.0) / 20.0);
}

TEST_CASE("load_config reports missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/thcs.json"), ConfigError);
}

TEST_CASE("time series CSV") {
  testing::TempDir dir("csv");
  DiagnosticsRecord a, b;
  a.time = 0.1;
  a.energy = 1.0 / 3.0;
  a.h3_psi = 1e-300;
  b.time = 0.2;
  b.dissipation = 2.718281828459045;
  b.frac_half_rho = -0.0;
  write_timeseries({a, b}, dir.file("ts.csv"));
  const std::string text = slurp(dir.file("ts.csv"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.rfind(timeseries_header() + "\n", 0) == 0);
  CHECK(text.back() == '\n');
  const auto back = read_timeseries(dir.file("ts.csv"));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);

  CHECK_THROWS_AS(write_timeseries({}, dir.file("empty.csv")), std::invalid_argument);
  CHECK_FALSE(std::filesystem::exists(dir.file("empty.csv")));
  CHECK_THROWS_AS(write_timeseries({a}, dir.file("missing/ts.csv")), Error);
}

TEST_CASE("snapshot round trip and byte stability") {
  testing::TempDir dir("snap");
  ModelParams p;
  p.grid = WaveGrid(32);
  p.nu = 0.02;
  p.prandtl = 3.0;
  p.n_squared = 0.5;
  State s = random_band_state(p, 77, 1.0, 10);
  s.time = 1.25;
  write_snapshot(s, p, dir.file("a.thcs"));
  const Snapshot snap = read_snapshot(dir.file("a.thcs"));
  CHECK(snap.state.time == 1.25);
  CHECK(snap.params.nu == p.nu);
  CHECK(snap.params.prandtl == p.prandtl);
  CHECK(snap.params.n_squared == p.n_squared);
  CHECK(snap.params.grid == p.grid);
  CHECK(testing::max_abs_diff(snap.state.omega, s.omega) <= 1e-14 * testing::max_abs(s.omega));
  CHECK(testing::max_abs_diff(snap.state.rho, s.rho) <= 1e-14 * testing::max_abs(s.rho));
  CHECK(snap.state.omega.coefficients()[0] == Complex(0.0, 0.0));

  write_snapshot(snap.state, snap.params, dir.file("b.thcs"));
  CHECK(slurp(dir.file("a.thcs")) == slurp(dir.file("b.thcs")));
  CHECK(slurp(dir.file("a.thcs")).size() == 44 + 2 * 32 * 32 * 8);

  write_snapshot(State(p.grid), p, dir.file("zero.thcs"));
  CHECK(read_snapshot(dir.file("zero.thcs")).state.omega.is_zero());
}

TEST_CASE("snapshot byte stability across many states") {
  testing::TempDir dir("snapmany");
  for (int n : {16, 64}) {
    ModelParams p;
    p.grid = WaveGrid(n);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const State s = random_band_state(p, seed, std::ldexp(1.0, static_cast<int>(seed) - 5), n / 3);
      write_snapshot(s, p, dir.file("a.thcs"));
      const Snapshot snap = read_snapshot(dir.file("a.thcs"));
      write_snapshot(snap.state, snap.params, dir.file("b.thcs"));
      REQUIRE(slurp(dir.file("a.thcs")) == slurp(dir.file("b.thcs")));
    }
  }
}

TEST_CASE("corrupted snapshots are rejected") {
  testing::TempDir dir("badsnap");
  ModelParams p;
  p.grid = WaveGrid(16);
  write_snapshot(random_band_state(p, 1, 1.0), p, dir.file("good.thcs"));
  std::string bytes = slurp(dir.file("good.thcs"));

  std::string bad = bytes;
  bad[0] = 'X';
  spit(dir.file("magic.thcs"), bad);
  CHECK_THROWS_WITH_AS(read_snapshot(dir.file("magic.thcs")), doctest::Contains("not a THCS snapshot"), Error);

  bad = bytes;
  bad[4] = 9;
  spit(dir.file("version.thcs"), bad);
  CHECK_THROWS_WITH_AS(read_snapshot(dir.file("version.thcs")), doctest::Contains("version"), Error);

  spit(dir.file("short.thcs"), bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_WITH_AS(read_snapshot(dir.file("short.thcs")), doctest::Contains("truncated"), Error);
  spit(dir.file("header.thcs"), bytes.substr(0, 20));
  CHECK_THROWS_WITH_AS(read_snapshot(dir.file("header.thcs")), doctest::Contains("truncated"), Error);
}

TEST_CASE("resumed run matches the uninterrupted run") {
  testing::TempDir dir("resume");
  ModelParams p;
  p.grid = WaveGrid(32);
  p.prandtl = 2.0;
  StepControl ctrl;
  ctrl.dt = 0.01;
  const State s0 = random_band_state(p, 9, 1.0);
  const ForcingSpec none(p.grid);
  const auto whole = simulate(s0, p, none, ctrl, 1.0, 1);
  const auto half = simulate(s0, p, none, ctrl, 0.5, 1);
  write_snapshot(half.final_state, p, dir.file("mid.thcs"));
  const Snapshot snap = read_snapshot(dir.file("mid.thcs"));
  const auto rest = simulate(snap.state, snap.params, none, ctrl, 1.0, 1);
  REQUIRE(rest.records.size() == 51);
  for (std::size_t i = 0; i < rest.records.size(); ++i) {
    const auto& a = whole.records[50 + i];
    const auto& b = rest.records[i];
    REQUIRE(a.time == doctest::Approx(b.time).epsilon(1e-14));
    for (const auto& name : diagnostic_names()) {
      const double x = series_of({a}, name).front().second;
      const double y = series_of({b}, name).front().second;
      REQUIRE(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("cli: audit prints a JSON report") {
  const auto r = cli({"audit", "--resolution", "64", "--trials", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"jacobian_self\"") != std::string::npos);
  CHECK(last_line(r.out).rfind("status=ok command=audit", 0) == 0);
}

TEST_CASE("cli: usage errors exit 1") {
  CHECK(cli({}).code == kExitValidation);
  const auto r = cli({"frobnicate"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(last_line(r.out).rfind("status=error", 0) == 0);
  CHECK(cli({"audit", "--resolution", "48"}).code == kExitValidation);
  CHECK(cli({"run"}).code == kExitValidation);
}

TEST_CASE("cli: validation errors exit 1 naming the field") {
  testing::TempDir dir("clival");
  spit(dir.file("c.json"), R"({"model": {"nu": -1}})");
  const auto r = cli({"run", "--config", dir.file("c.json")});
  CHECK(r.code == kExitValidation);
  CHECK(last_line(r.out).find("field=\"model.nu\"") != std::string::npos);
}

TEST_CASE("cli: run writes artifacts and is byte-deterministic") {
  testing::TempDir dir("clirun");
  const std::string cfg = R"({"grid": {"resolution": 16}, "initial": {"seed": 4},
    "stepping": {"dt": 0.01}, "output": {"t_end": 0.2, "out_dir": ")" + dir.file("out") + R"("}})";
  spit(dir.file("c.json"), cfg);
  const auto a = cli({"run", "--config", dir.file("c.json")});
  REQUIRE(a.code == 0);
  CHECK(last_line(a.out).rfind("status=ok command=run", 0) == 0);
  const std::string csv = slurp(dir.file("out/timeseries.csv"));
  const std::string snap = slurp(dir.file("out/final.thcs"));
  const std::string echo = slurp(dir.file("out/config.json"));
  CHECK(read_timeseries(dir.file("out/timeseries.csv")).size() == 21);
  CHECK(std::filesystem::exists(dir.file("out/report.json")));
  CHECK(cli({"run", "--config", dir.file("c.json")}).code == 0);
  CHECK(slurp(dir.file("out/timeseries.csv")) == csv);
  CHECK(slurp(dir.file("out/final.thcs")) == snap);
  // The echo alone reproduces the run.
  spit(dir.file("echo.json"), echo);
  CHECK(cli({"run", "--config", dir.file("echo.json")}).code == 0);
  CHECK(slurp(dir.file("out/timeseries.csv")) == csv);
}

TEST_CASE("cli: run resumes from a snapshot") {
  testing::TempDir dir("cliresume");
  auto cfg = [&](double t_end, const std::string& out) {
    return R"({"grid": {"resolution": 16}, "initial": {"seed": 4}, "stepping": {"dt": 0.01},
      "output": {"t_end": )" + std::to_string(t_end) + R"(, "out_dir": ")" + dir.file(out) + R"("}})";
  };
  spit(dir.file("half.json"), cfg(0.1, "half"));
  spit(dir.file("full.json"), cfg(0.2, "full"));
  spit(dir.file("rest.json"), cfg(0.2, "rest"));
  REQUIRE(cli({"run", "--config", dir.file("half.json")}).code == 0);
  REQUIRE(cli({"run", "--config", dir.file("full.json")}).code == 0);
  REQUIRE(cli({"run", "--config", dir.file("rest.json"), "--resume", dir.file("half/final.thcs")}).code == 0);
  const auto full = read_timeseries(dir.file("full/timeseries.csv"));
  const auto rest = read_timeseries(dir.file("rest/timeseries.csv"));
  CHECK(std::abs(full.back().energy - rest.back().energy) <= 1e-10 * full.back().energy);
  CHECK(rest.front().time == doctest::Approx(0.1));
}

TEST_CASE("cli: oversized fixed dt exits 2 with the divergence time") {
  testing::TempDir dir("clidiv");
  spit(dir.file("c.json"), R"({"grid": {"resolution": 16}, "model": {"nu": 0.0001, "n_squared": 400},
    "initial": {"energy": 10, "seed": 1}, "stepping": {"dt": 0.5},
    "output": {"t_end": 1000, "out_dir": ")" + dir.file("out") + R"("}})");
  const auto r = cli({"run", "--config", dir.file("c.json")});
  CHECK(r.code == kExitDivergence);
  CHECK(last_line(r.out).rfind("status=divergence command=run t=", 0) == 0);
  CHECK(std::filesystem::exists(dir.file("out/timeseries.csv")));
}

TEST_CASE("cli: average with constant forcing reports zero errors") {
  testing::TempDir dir("cliavg");
  spit(dir.file("c.json"), R"({"grid": {"resolution": 16}, "model": {"nu": 0.1},
    "initial": {"energy": 0.1, "seed": 2}, "stepping": {"dt": 0.01},
    "forcing": {"components": [{"k": [1, 0], "amplitude": 1}]},
    "output": {"out_dir": ")" + dir.file("out") + R"("}})");
  const auto r = cli({"average", "--config", dir.file("c.json"), "--eta-list", "4,16", "--horizon", "0.3"});
  CHECK(r.code == 0);
  CHECK(last_line(r.out).rfind("status=ok command=average max_sup_error=0 ", 0) == 0);
  CHECK(std::filesystem::exists(dir.file("out/average.json")));
  CHECK(slurp(dir.file("out/config.json")).find("\"horizon\": 0.3") != std::string::npos);
  CHECK(cli({"average", "--config", dir.file("c.json"), "--eta-list", "4,x"}).code == kExitValidation);
}

TEST_CASE("cli: decay writes fits") {
  testing::TempDir dir("clidecay");
  spit(dir.file("c.json"), R"({"grid": {"resolution": 16}, "initial": {"kind": "single_mode", "mode": [1, 0]},
    "model": {"nu": 0.05}, "stepping": {"dt": 0.005}, "output": {"t_end": 2, "out_dir": ")" +
                               dir.file("out") + R"("}})");
  const auto r = cli({"decay", "--config", dir.file("c.json")});
  CHECK(r.code == 0);
  CHECK(last_line(r.out).find("envelope_ok=true") != std::string::npos);
  CHECK(slurp(dir.file("out/decay.json")).find("\"degenerate-zero\"") == std::string::npos);
}
