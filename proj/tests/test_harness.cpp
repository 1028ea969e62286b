#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlse/config.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"

using namespace nlse;
namespace fs = std::filesystem;

namespace {

const char* kBaseConfig = R"({
  "model": {"c1": 1, "c2": 1.0, "rho": 1},
  "grid": {"t_min": -16.0, "t_max": 16.0, "n": 256},
  "solver": {"dz": 0.002, "z_end": 0.2, "snapshot_every": 25},
  "initial": {"kind": "gaussian", "amplitude": 1.0, "width": 1.0},
  "bounds": {"epsilon": 0.1, "delta": 0.05, "coefficient_variant": "squared"},
  "output": {"formats": ["csv", "json"]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void expect_config_error(const std::string& text, const char* needle) {
  try {
    parse_config_text(text);
    FAIL_CHECK("expected rejection: " << needle);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("config: full parse") {
  const ExperimentConfig cfg = parse_config_text(kBaseConfig);
  CHECK(cfg.model.c1 == 1);
  CHECK(cfg.model.c2 == 1.0);
  CHECK(cfg.grid.n == 256);
  CHECK(cfg.solver.snapshot_every == 25);
  CHECK(cfg.initial.kind == InitialSpec::Kind::Gaussian);
  CHECK(cfg.bounds.epsilon == 0.1);
  CHECK_FALSE(cfg.bounds.auto_delta);
  CHECK(cfg.output.csv);
  CHECK(cfg.output.json);
  CHECK_FALSE(cfg.output.svg);
}

TEST_CASE("config: unknown keys are rejected with a field path") {
  expect_config_error(R"({"grid": {"t_min": -1, "t_max": 1, "n": 64, "m": 2}})",
                      "grid: unknown key 'm'");
  expect_config_error(R"({"wat": 1})", "unknown key 'wat'");
  expect_config_error(
      R"({"bounds": {"epsilon": 0.1, "delta": {"x": 1}}})", "bounds.delta");
}

TEST_CASE("config: value validation carries the field path") {
  expect_config_error(R"({"grid": {"t_min": -1, "t_max": 1, "n": 63}})",
                      "grid.n");
  expect_config_error(R"({"solver": {"dz": -0.1}})", "solver.dz");
  expect_config_error(R"({"model": {"c1": 2}})", "model.c1");
  expect_config_error(R"({"model": {"c2": 0.0}})", "model.c2");
  expect_config_error(R"({"bounds": {"epsilon": -1}})", "bounds.epsilon");
  expect_config_error(R"({"initial": {"kind": "nope"}})", "initial.kind");
  expect_config_error(R"({"output": {"formats": ["csv", "pdf"]}})",
                      "output.formats");
}

TEST_CASE("config: delta accepts a number or 'auto'") {
  auto cfg = parse_config_text(R"({"bounds": {"delta": "auto"}})");
  CHECK(cfg.bounds.auto_delta);
  cfg = parse_config_text(R"({"bounds": {"delta": 0.02}})");
  CHECK_FALSE(cfg.bounds.auto_delta);
  CHECK(cfg.bounds.delta == 0.02);
}

TEST_CASE("config: coefficient family section") {
  const ExperimentConfig cfg = parse_config_text(R"({
    "family": {
      "f": {"kind": "const", "value": 0.5},
      "g": {"kind": "exp", "scale": -1.0, "rate": -0.2},
      "h": {"kind": "const", "value": 0.0}
    },
    "z_grid": {"z_min": 0.0, "z_max": 2.0, "count": 64}
  })");
  REQUIRE(cfg.family.has_value());
  CHECK(cfg.family->f(3.0) == 0.5);
  CHECK(cfg.family->g(0.0) == doctest::Approx(-1.0));
  CHECK_FALSE(cfg.family->v2.has_value());
  CHECK(cfg.z_grid.count == 64);

  expect_config_error(R"({"family": {"f": {"kind": "wat"}}})", "family.f.kind");
  expect_config_error(R"({"family": {"g": {"kind": "const", "value": 1}}})",
                      "family.f");
}

TEST_CASE("run_closeness: zero datum passes trivially") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.initial.amplitude = 0.0;
  const ClosenessReport rep = run_closeness(cfg);
  CHECK(rep.domination_pass);
  CHECK(rep.distance_within_epsilon);
  CHECK(rep.scale_factor == 1.0);
  for (const auto& s : rep.samples) {
    CHECK(s.measured_distance == 0.0);
    CHECK(s.measured_t2v == 0.0);
    CHECK(s.h_bound >= 0.0);
    CHECK(s.f_bound >= 0.0);
  }
  CHECK(rep.exit_code() == kExitOk);
}

TEST_CASE("run_closeness: fixed delta, desk-scale smoke") {
  const ExperimentConfig cfg = parse_config_text(kBaseConfig);
  const ClosenessReport rep = run_closeness(cfg);
  CHECK(rep.domination_pass);
  CHECK(rep.distance_within_epsilon);
  CHECK(rep.samples.size() >= 3);
  CHECK(rep.samples.front().z == 0.0);
  CHECK(rep.samples.front().measured_distance == 0.0);
  CHECK(rep.samples.back().z == doctest::Approx(0.2));
  // datum was scaled down to 0.9 delta
  CHECK(rep.scale_factor < 1.0);
  CHECK(rep.samples.front().measured_t2v ==
        doctest::Approx(0.9 * rep.delta).epsilon(1e-6));
}

TEST_CASE("run_closeness: auto delta calibrates within the admissible window") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.bounds.auto_delta = true;
  const ClosenessReport rep = run_closeness(cfg);
  CHECK(rep.domination_pass);
  CHECK(rep.distance_within_epsilon);
  CHECK(rep.seed_delta.has_value());
  CHECK(rep.calibration_L.has_value());
  CHECK(rep.delta > 0.0);
  CHECK(rep.L_run <= cfg.solver.z_end);
  REQUIRE(rep.delta_max_at_L_run.has_value());
  CHECK(rep.delta < *rep.delta_max_at_L_run);
}

TEST_CASE("domination is not tied to c2 = 1") {
  for (double c2 : {0.5, 2.0}) {
    ExperimentConfig cfg = parse_config_text(kBaseConfig);
    cfg.model.c2 = c2;
    cfg.bounds.auto_delta = true;
    const ClosenessReport rep = run_closeness(cfg);
    CHECK(rep.domination_pass);
    CHECK(rep.distance_within_epsilon);
  }
}

TEST_CASE("both distance-bound conventions are reported") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.model.c2 = 2.0;
  const ClosenessReport rep = run_closeness(cfg);
  for (const auto& s : rep.samples) {
    if (s.z == 0.0) continue;
    CHECK(s.distance_bound_squared / s.distance_bound_literal ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.distance_bound == s.distance_bound_squared);  // configured variant
  }
}

TEST_CASE("the closeness verdict is recomputable from its own samples") {
  const ExperimentConfig cfg = parse_config_text(kBaseConfig);
  const ClosenessReport rep = run_closeness(cfg);
  bool recomputed = true;
  for (const auto& s : rep.samples) {
    recomputed = recomputed && s.measured_distance <= s.distance_bound &&
                 s.measured_TQ_T <= s.h_bound && s.measured_T2Q <= s.f_bound &&
                 s.measured_t2v <= s.g_bound;
  }
  CHECK(recomputed == rep.domination_pass);
  CHECK(rep.violations.empty() == rep.domination_pass);
}

TEST_CASE("closeness outputs are deterministic") {
  const ExperimentConfig cfg = parse_config_text(kBaseConfig);
  TempDir a("nlse_det_a"), b("nlse_det_b");
  const ClosenessReport r1 = run_closeness(cfg);
  write_closeness_outputs(r1, cfg, a.path.string());
  const ClosenessReport r2 = run_closeness(cfg);
  write_closeness_outputs(r2, cfg, b.path.string());
  CHECK(slurp(a.path / "metrics.csv") == slurp(b.path / "metrics.csv"));
  CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
  CHECK_FALSE(slurp(a.path / "metrics.csv").empty());
}

TEST_CASE("run_convergence: second order at desk scale") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.initial.kind = InitialSpec::Kind::Soliton;
  cfg.initial.a = 1.0;
  cfg.grid = {-20.0, 20.0, 256};
  cfg.solver.dz = 0.01;
  cfg.solver.z_end = 0.25;
  cfg.solver.snapshot_every = 1000;
  const ConvergenceReport rep = run_convergence(cfg);
  REQUIRE(rep.errors.size() == 4);
  CHECK(rep.errors[1] < rep.errors[0]);
  CHECK(rep.fitted_order > 1.8);
  CHECK(rep.fitted_order < 2.2);
  CHECK(rep.order_ok);

  cfg.initial.kind = InitialSpec::Kind::Gaussian;
  CHECK_THROWS_AS(run_convergence(cfg), Error);
}

TEST_CASE("run_convergence: zero-length run has zero error") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.initial.kind = InitialSpec::Kind::Soliton;
  cfg.solver.z_end = 0.0;
  const ConvergenceReport rep = run_convergence(cfg);
  for (double e : rep.errors) CHECK(e == 0.0);
}

TEST_CASE("run_bound_sweep: monotone table and reverse reading") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.solver.z_end = 0.1;  // constants pass only needs a short run
  const std::vector<double> epsilons{0.05, 0.1, 0.2};
  const SweepReport rep = run_bound_sweep(cfg, epsilons, {0.001, 0.01});
  REQUIRE(rep.epsilon_table.size() == 3);
  CHECK(rep.epsilon_table[0].L < rep.epsilon_table[1].L);
  CHECK(rep.epsilon_table[1].L < rep.epsilon_table[2].L);
  for (const auto& row : rep.epsilon_table) {
    REQUIRE(row.delta_max_samples.size() == 16);
    // delta_max near 0 dominates delta_max near L
    CHECK(row.delta_max_samples.front().second >
          row.delta_max_samples.back().second);
  }
  CHECK(rep.delta_table.size() == 2);
  // reverse reading: G(L_bar, eps) > H(L_bar) exactly above epsilon_min
  const double em = rep.epsilon_min;
  CHECK(G_func(rep.L_bar, em * 1.01, rep.constants, rep.variant) >
        H_func(rep.L_bar, rep.constants));
  CHECK(G_func(rep.L_bar, em * 0.99, rep.constants, rep.variant) <
        H_func(rep.L_bar, rep.constants));
}

TEST_CASE("run_bound_sweep: empty epsilon list yields an empty report") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.solver.z_end = 0.05;
  const SweepReport rep = run_bound_sweep(cfg, {}, {});
  CHECK(rep.epsilon_table.empty());
  CHECK(rep.delta_table.empty());
}

TEST_CASE("run_simulate: needs a model kind, writes the pinned metrics") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  CHECK_THROWS_AS(run_simulate(cfg), Error);

  cfg.model.kind = ModelTag::Integrable;
  cfg.solver.z_end = 0.05;
  const SimulateReport rep = run_simulate(cfg);
  CHECK(rep.mass_drift < 1e-10);

  TempDir dir("nlse_simulate_out");
  write_simulate_outputs(rep, cfg, dir.path.string());
  const std::string metrics = slurp(dir.path / "metrics.csv");
  CHECK(metrics.rfind("z,l2,t2_moment,t_ut_moment\n", 0) == 0);
  CHECK(fs::exists(dir.path / "fields" / "snapshot_000000.csv"));
  CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("run_simulate: cubic model with a plain soliton datum") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.model.kind = ModelTag::Cubic;
  cfg.model.rho = 1;
  cfg.initial.kind = InitialSpec::Kind::Soliton;
  cfg.initial.a = 1.0;
  cfg.grid = {-20.0, 20.0, 512};
  cfg.solver = {2e-3, 0.1, 25};
  const SimulateReport rep = run_simulate(cfg);
  CHECK(rep.mass_drift < 1e-10);
  // the datum is the unchirped sech profile with ||Q|| = 2
  CHECK(rep.trajectory.observables.front().l2 == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("run_painleve_check: fiber family is certified integrable") {
  const ExperimentConfig cfg = parse_config_text(R"({
    "family": {
      "f": {"kind": "const", "value": -0.5},
      "g": {"kind": "exp", "scale": -1.0, "rate": -0.2}
    },
    "z_grid": {"z_min": 0.0, "z_max": 2.0, "count": 128}
  })");
  const PainleveReport rep = run_painleve_check(cfg);
  CHECK(rep.integrable);
  // v2 = alpha^2/(2 beta2) with alpha = 0.2, beta2 = -1
  CHECK(rep.v2.front() == doctest::Approx(-0.02).epsilon(1e-8));
  CHECK(rep.max_abs_residual < 1e-8);
}

TEST_CASE("run_painleve_check: perturbed v2 is flagged") {
  const ExperimentConfig cfg = parse_config_text(R"({
    "family": {
      "f": {"kind": "const", "value": -0.5},
      "g": {"kind": "exp", "scale": -1.0, "rate": -0.2},
      "v2": {"kind": "const", "value": 0.08}
    },
    "z_grid": {"z_min": 0.0, "z_max": 2.0, "count": 128}
  })");
  const PainleveReport rep = run_painleve_check(cfg);
  CHECK(rep.v2_supplied);
  CHECK_FALSE(rep.integrable);
}

TEST_CASE("sampled coefficient loaded from a csv table") {
  TempDir dir("nlse_samples_csv");
  {
    std::ofstream csv(dir.path / "g.csv");
    csv << "z,value\n";
    csv.precision(17);  // finite differences need full-precision samples
    for (int i = 0; i < 256; ++i) {
      const double z = 2.0 * i / 255.0;
      csv << z << ',' << -std::exp(-0.5 * z) << '\n';
    }
  }
  std::ostringstream cfg_text;
  cfg_text << R"({
    "family": {
      "f": {"kind": "const", "value": 0.5},
      "g": {"kind": "samples", "path": ")"
           << (dir.path / "g.csv").string() << R"("}
    },
    "z_grid": {"z_min": 0.0, "z_max": 2.0, "count": 256}
  })";
  const ExperimentConfig cfg = parse_config_text(cfg_text.str());
  const PainleveReport rep = run_painleve_check(cfg);
  // alpha = 0.5, beta2 = 1: v2 = 0.125, finite-difference accuracy
  CHECK(std::abs(rep.v2[128] - 0.125) < 1e-4 * 0.125);
  CHECK(rep.max_abs_residual < 1e-10);  // same stencils cancel exactly
}

TEST_CASE("file datum round trip through the harness") {
  TempDir dir("nlse_file_datum");
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  const auto grid = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);
  write_field_csv((dir.path / "datum.csv").string(),
                  make_gaussian(grid, 0.5, 1.0));

  cfg.initial.kind = InitialSpec::Kind::File;
  cfg.initial.path = (dir.path / "datum.csv").string();
  const ComplexField f = build_initial(cfg, grid);
  CHECK(l2_norm(f) == doctest::Approx(0.5 * 1.3313353638003897).epsilon(1e-8));

  // mismatched grid spec is a config error
  cfg.grid.n = 512;
  const auto other = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);
  CHECK_THROWS_AS(build_initial(cfg, other), Error);
}
