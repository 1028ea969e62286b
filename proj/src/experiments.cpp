#include "nlse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlse/csv.hpp"
#include "nlse/errors.hpp"
#include "nlse/svg.hpp"
#include "nlse/transform.hpp"

namespace nlse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

MapParams map_params(const ExperimentConfig& cfg) {
  MapParams p;
  p.c2 = cfg.model.c2;
  p.interp = cfg.interp;
  return p;
}

SplitStepConfig step_config(const ExperimentConfig& cfg) {
  SplitStepConfig sc;
  sc.dz = cfg.solver.dz;
  sc.snapshot_every = cfg.solver.snapshot_every;
  return sc;
}

struct Triple {
  Trajectory u, v, Q;
};

/// u and v from the shared datum, Q from the dechirped datum with snapshots
/// landing exactly on the Z images of the v snapshots.
Triple run_triple(const ExperimentConfig& cfg, const ComplexField& v0,
                  double z_end) {
  Triple t;
  const auto sc = step_config(cfg);
  t.u = evolve(dissipative_model(cfg.model.c1, cfg.model.c2), v0, z_end, sc);
  t.v = evolve(integrable_model(cfg.model.c1, cfg.model.c2), v0, z_end, sc);

  const ComplexField Q0 = inverse_map(v0, map_params(cfg));
  std::vector<double> targets;
  for (std::size_t k = 1; k < t.v.z_values.size(); ++k)
    targets.push_back(z_to_Z(t.v.z_values[k], cfg.model.c2));
  t.Q = targets.empty()
            ? evolve(cubic_model(cfg.model.c1), Q0, 0.0, sc)
            : evolve_to(cubic_model(cfg.model.c1), Q0, targets, cfg.solver.dz);
  return t;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

json constants_json(const BoundConstants& c) {
  return json{{"K", c.K},
              {"C", c.C},
              {"C_tilde", c.C_tilde},
              {"c2", c.c2},
              {"delta", c.delta}};
}

}  // namespace

ComplexField build_initial(const ExperimentConfig& cfg, const GridPtr& grid) {
  switch (cfg.initial.kind) {
    case InitialSpec::Kind::Gaussian:
      return make_gaussian(grid, cfg.initial.amplitude, cfg.initial.width);
    case InitialSpec::Kind::Soliton:
      // z = 0 trace of the transformed soliton: the chirped sech profile.
      return forward_map(soliton_profile(cfg.initial.a, 0.0), 0.0, grid,
                         map_params(cfg));
    case InitialSpec::Kind::File: {
      ComplexField f = read_field_csv(cfg.initial.path);
      if (!same_grid(*f.grid, *grid))
        fail(ErrorCode::ConfigError,
             "initial.path: file grid does not match the grid section");
      return f;
    }
  }
  fail(ErrorCode::ConfigError, "initial.kind: unknown");
}

ComplexField scale_to_delta(const ComplexField& datum, double delta,
                            bool exact, double* factor_out) {
  if (!(delta > 0.0))
    fail(ErrorCode::InvalidParams, "scale_to_delta: delta must be > 0");
  const double m = std::max(weighted_norm_t2(datum), weighted_norm_t_ut(datum));
  double s = 1.0;
  if (m > 0.0 && (exact || m > 0.9 * delta)) s = 0.9 * delta / m;
  if (factor_out) *factor_out = s;
  if (s == 1.0) return datum;
  ComplexField out = datum;
  for (auto& v : out.values) v *= s;
  return out;
}

ClosenessReport run_closeness(const ExperimentConfig& cfg) {
  const GridPtr grid = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);
  const ComplexField datum = build_initial(cfg, grid);
  const double eps = cfg.bounds.epsilon;
  const auto variant = cfg.bounds.variant;

  ClosenessReport rep;
  rep.epsilon = eps;
  rep.variant = variant;

  double delta = cfg.bounds.delta;
  double L_run = cfg.solver.z_end;
  if (cfg.bounds.auto_delta) {
    // Calibration: measure constants at the current delta, pick the run
    // length inside the admissible window, move delta to 90% of the largest
    // admissible value there, and repeat until the constants stop drifting.
    // The 0.9 headroom absorbs the residual drift, so the verdict run is
    // done at a delta consistent with its own measured constants.
    rep.seed_delta = cfg.bounds.delta;
    for (int round = 0; round < 4; ++round) {
      const ComplexField trial = scale_to_delta(datum, delta, true, nullptr);
      const Triple t0 = run_triple(cfg, trial, cfg.solver.z_end);
      const BoundConstants c0 =
          estimate_constants(t0.u, t0.v, t0.Q, cfg.model.c2, delta);
      const FindLResult l0 = find_L(eps, c0, variant);
      rep.calibration_L = l0.L;
      L_run = std::min(cfg.solver.z_end, 0.9 * l0.L);
      if (!(L_run > 0.0))
        fail(ErrorCode::Precondition, "closeness: empty admissible interval");
      const double next = 0.9 * delta_max(L_run, eps, c0, variant);
      const bool settled = std::abs(next - delta) <= 0.02 * std::max(next, delta);
      delta = next;
      if (settled) break;
    }
  }
  rep.delta = delta;
  rep.L_run = L_run;

  const ComplexField v0 =
      scale_to_delta(datum, delta, cfg.bounds.auto_delta, &rep.scale_factor);
  const Triple t = run_triple(cfg, v0, L_run);
  rep.constants = estimate_constants(t.u, t.v, t.Q, cfg.model.c2, delta);

  const FindLResult lr = find_L(eps, rep.constants, variant);
  rep.L_of_epsilon = lr.L;
  rep.L_saturated = lr.saturated;
  if (L_run > 0.0 && L_run < lr.L)
    rep.delta_max_at_L_run = delta_max(L_run, eps, rep.constants, variant);

  const std::size_t count = t.v.z_values.size();
  rep.samples.reserve(count);
  rep.domination_pass = true;
  rep.distance_within_epsilon = true;
  for (std::size_t k = 0; k < count; ++k) {
    ClosenessSample s;
    s.z = t.v.z_values[k];
    s.Z = z_to_Z(s.z, cfg.model.c2);
    s.measured_distance = l2_distance(t.v.snapshots[k], t.u.snapshots[k]);
    s.measured_TQ_T = t.Q.observables[k].t_ut_moment;
    s.measured_T2Q = t.Q.observables[k].t2_moment;
    s.measured_t2v = t.v.observables[k].t2_moment;
    s.measured_t_ut_v = t.v.observables[k].t_ut_moment;
    s.h_bound = h_bound(s.Z, rep.constants);
    s.f_bound = f_bound(s.Z, rep.constants);
    s.g_bound = g_bound(s.z, rep.constants);
    s.distance_bound_squared =
        distance_bound(s.z, rep.constants, CoefficientVariant::Squared);
    s.distance_bound_literal =
        distance_bound(s.z, rep.constants, CoefficientVariant::PaperLiteral);
    s.distance_bound = variant == CoefficientVariant::Squared
                           ? s.distance_bound_squared
                           : s.distance_bound_literal;
    s.l2_u = t.u.observables[k].l2;
    s.l2_v = t.v.observables[k].l2;
    s.l2_Q = t.Q.observables[k].l2;

    const auto check = [&](const char* name, double measured, double bound) {
      if (measured <= bound) return;
      std::ostringstream os;
      os << name << " at z = " << fmt_g17(s.z) << ": measured "
         << fmt_g17(measured) << " > bound " << fmt_g17(bound);
      rep.violations.push_back(os.str());
      rep.domination_pass = false;
    };
    check("distance", s.measured_distance, s.distance_bound);
    check("TQ_T", s.measured_TQ_T, s.h_bound);
    check("T2Q", s.measured_T2Q, s.f_bound);
    check("t2v", s.measured_t2v, s.g_bound);
    if (!(s.measured_distance < eps)) rep.distance_within_epsilon = false;
    rep.samples.push_back(s);
  }

  rep.field_exports.emplace_back("v_initial", t.v.snapshots.front());
  rep.field_exports.emplace_back("Q_initial", t.Q.snapshots.front());
  rep.field_exports.emplace_back("u_final", t.u.snapshots.back());
  rep.field_exports.emplace_back("v_final", t.v.snapshots.back());
  rep.field_exports.emplace_back("Q_final", t.Q.snapshots.back());
  return rep;
}

void write_closeness_outputs(const ClosenessReport& rep,
                             const ExperimentConfig& cfg,
                             const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  if (cfg.output.csv) {
    std::ofstream csv(dir / "metrics.csv");
    if (!csv) fail(ErrorCode::Io, "cannot open metrics.csv");
    csv << "z,Z,l2_u,l2_v,l2_Q,distance,t2_v,t_ut_v,T2_Q,TQ_T,"
           "h_bound,f_bound,g_bound,distance_bound,"
           "distance_bound_squared,distance_bound_literal\n";
    for (const auto& s : rep.samples) {
      // t_ut_v is reported for completeness alongside the bounded norms
      csv << fmt_g17(s.z) << ',' << fmt_g17(s.Z) << ',' << fmt_g17(s.l2_u)
          << ',' << fmt_g17(s.l2_v) << ',' << fmt_g17(s.l2_Q) << ','
          << fmt_g17(s.measured_distance) << ',' << fmt_g17(s.measured_t2v)
          << ',' << fmt_g17(s.measured_t_ut_v) << ','
          << fmt_g17(s.measured_T2Q) << ',' << fmt_g17(s.measured_TQ_T) << ','
          << fmt_g17(s.h_bound) << ',' << fmt_g17(s.f_bound) << ','
          << fmt_g17(s.g_bound) << ',' << fmt_g17(s.distance_bound) << ','
          << fmt_g17(s.distance_bound_squared) << ','
          << fmt_g17(s.distance_bound_literal) << '\n';
    }
    fs::create_directories(dir / "fields");
    for (const auto& [name, field] : rep.field_exports)
      write_field_csv((dir / "fields" / (name + ".csv")).string(), field);
  }

  if (cfg.output.json) {
    json j = constants_json(rep.constants);
    j["experiment"] = "closeness";
    j["epsilon"] = rep.epsilon;
    j["delta"] = rep.delta;
    j["variant"] = to_string(rep.variant);
    j["scale_factor"] = rep.scale_factor;
    j["L_of_epsilon"] = rep.L_of_epsilon;
    j["L_saturated"] = rep.L_saturated;
    j["L_run"] = rep.L_run;
    j["delta_max"] = rep.delta_max_at_L_run
                         ? json(*rep.delta_max_at_L_run)
                         : json(nullptr);
    j["seed_delta"] = rep.seed_delta ? json(*rep.seed_delta) : json(nullptr);
    j["calibration_L"] =
        rep.calibration_L ? json(*rep.calibration_L) : json(nullptr);
    j["domination_pass"] = rep.domination_pass;
    j["distance_within_epsilon"] = rep.distance_within_epsilon;
    j["violations"] = rep.violations;
    j["exit_code"] = rep.exit_code();
    json samples = json::array();
    for (const auto& s : rep.samples) {
      samples.push_back(json{{"z", s.z},
                             {"Z", s.Z},
                             {"h_bound", s.h_bound},
                             {"f_bound", s.f_bound},
                             {"g_bound", s.g_bound},
                             {"distance_bound", s.distance_bound},
                             {"distance_bound_squared", s.distance_bound_squared},
                             {"distance_bound_literal", s.distance_bound_literal},
                             {"measured_distance", s.measured_distance},
                             {"measured_TQ_T", s.measured_TQ_T},
                             {"measured_T2Q", s.measured_T2Q},
                             {"measured_t2v", s.measured_t2v},
                             {"measured_t_ut_v", s.measured_t_ut_v}});
    }
    j["samples"] = samples;
    write_json(dir / "report.json", j);
  }

  if (cfg.output.svg) {
    fs::create_directories(dir / "plots");
    std::vector<double> zs, dist, dbound, epsline, hm, hb, fm, fb, gm, gb;
    for (const auto& s : rep.samples) {
      zs.push_back(s.z);
      dist.push_back(s.measured_distance);
      dbound.push_back(s.distance_bound);
      epsline.push_back(rep.epsilon);
      hm.push_back(s.measured_TQ_T);
      hb.push_back(s.h_bound);
      fm.push_back(s.measured_T2Q);
      fb.push_back(s.f_bound);
      gm.push_back(s.measured_t2v);
      gb.push_back(s.g_bound);
    }
    write_line_chart((dir / "plots" / "distance.svg").string(),
                     "L2 distance vs bound", "z", "L2",
                     {{"measured ||v-u||", zs, dist, "#1f77b4"},
                      {"distance bound", zs, dbound, "#d62728"},
                      {"epsilon", zs, epsline, "#7f7f7f"}});
    write_line_chart((dir / "plots" / "q_moments.svg").string(),
                     "Cubic-frame moments vs bounds", "z", "norm",
                     {{"||T Q_T||", zs, hm, "#1f77b4"},
                      {"h bound", zs, hb, "#d62728"},
                      {"||T^2 Q||", zs, fm, "#2ca02c"},
                      {"f bound", zs, fb, "#ff7f0e"}});
    write_line_chart((dir / "plots" / "v_moment.svg").string(),
                     "||t^2 v|| vs bound", "z", "norm",
                     {{"||t^2 v||", zs, gm, "#1f77b4"},
                      {"g bound", zs, gb, "#d62728"}});
  }
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
  if (cfg.initial.kind != InitialSpec::Kind::Soliton)
    fail(ErrorCode::ConfigError,
         "initial.kind: convergence study requires a soliton datum");
  const GridPtr grid = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);
  ConvergenceReport rep;
  rep.a = cfg.initial.a;
  rep.z_end = cfg.solver.z_end;

  const ModelKind model = cubic_model(1);
  const ComplexField Q0 = soliton(rep.a, 1, 0.0, grid);
  const ComplexField Qex = soliton(rep.a, 1, rep.z_end, grid);

  for (int i = 0; i < 4; ++i) {
    SplitStepConfig sc = step_config(cfg);
    sc.dz = cfg.solver.dz / static_cast<double>(1 << i);
    rep.dz_values.push_back(sc.dz);
    const Trajectory traj = evolve(model, Q0, rep.z_end, sc);
    rep.errors.push_back(l2_distance(traj.snapshots.back(), Qex));
  }
  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i)
    rep.ratios.push_back(rep.errors[i + 1] > 0.0
                             ? rep.errors[i] / rep.errors[i + 1]
                             : 0.0);

  // least-squares slope of log(error) against log(dz)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < rep.errors.size(); ++i) {
    if (!(rep.errors[i] > 0.0)) continue;
    const double x = std::log(rep.dz_values[i]);
    const double y = std::log(rep.errors[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double d = static_cast<double>(m);
    rep.fitted_order = (d * sxy - sx * sy) / (d * sxx - sx * sx);
  }
  rep.order_ok = rep.fitted_order >= 1.8 && rep.fitted_order <= 2.2;
  return rep;
}

void write_convergence_outputs(const ConvergenceReport& rep,
                               const ExperimentConfig& cfg,
                               const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (cfg.output.csv) {
    std::ofstream csv(dir / "metrics.csv");
    if (!csv) fail(ErrorCode::Io, "cannot open metrics.csv");
    csv << "dz,error,ratio_to_next\n";
    for (std::size_t i = 0; i < rep.dz_values.size(); ++i) {
      csv << fmt_g17(rep.dz_values[i]) << ',' << fmt_g17(rep.errors[i]) << ',';
      if (i < rep.ratios.size()) csv << fmt_g17(rep.ratios[i]);
      csv << '\n';
    }
  }
  if (cfg.output.json) {
    json j{{"experiment", "convergence"},
           {"a", rep.a},
           {"z_end", rep.z_end},
           {"dz_values", rep.dz_values},
           {"errors", rep.errors},
           {"ratios", rep.ratios},
           {"fitted_order", rep.fitted_order},
           {"order_ok", rep.order_ok}};
    write_json(dir / "report.json", j);
  }
  if (cfg.output.svg) {
    fs::create_directories(dir / "plots");
    write_line_chart((dir / "plots" / "convergence.svg").string(),
                     "Soliton error vs step size", "dz", "L2 error",
                     {{"error", rep.dz_values, rep.errors, "#1f77b4"}},
                     /*log_y=*/true);
  }
}

SweepReport run_bound_sweep(const ExperimentConfig& cfg,
                            const std::vector<double>& epsilons,
                            const std::vector<double>& deltas) {
  for (double e : epsilons)
    if (!(e > 0.0))
      fail(ErrorCode::ConfigError, "epsilons: values must be > 0");
  for (double d : deltas)
    if (!(d > 0.0)) fail(ErrorCode::ConfigError, "deltas: values must be > 0");

  const GridPtr grid = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);
  const ComplexField datum = build_initial(cfg, grid);
  const ComplexField v0 =
      scale_to_delta(datum, cfg.bounds.delta, false, nullptr);
  const Triple t = run_triple(cfg, v0, cfg.solver.z_end);

  SweepReport rep;
  rep.variant = cfg.bounds.variant;
  rep.constants =
      estimate_constants(t.u, t.v, t.Q, cfg.model.c2, cfg.bounds.delta);

  for (double eps : epsilons) {
    SweepEpsilonRow row;
    row.epsilon = eps;
    const FindLResult lr = find_L(eps, rep.constants, rep.variant);
    row.L = lr.L;
    row.saturated = lr.saturated;
    const double z_hi = 0.98 * lr.L;
    const double z_lo = lr.L / 100.0;
    for (int i = 0; i < 16; ++i) {
      const double z =
          z_lo * std::exp(std::log(z_hi / z_lo) * i / 15.0);
      row.delta_max_samples.emplace_back(
          z, delta_max(z, eps, rep.constants, rep.variant));
    }
    rep.epsilon_table.push_back(std::move(row));
  }

  for (double d : deltas) {
    SweepDeltaRow row;
    row.delta = d;
    for (const auto& er : rep.epsilon_table) {
      // largest propagation distance on the scan grid with delta admissible
      double best = 0.0;
      for (const auto& [z, dm] : er.delta_max_samples)
        if (d < dm) best = std::max(best, z);
      row.admissible_L.emplace_back(er.epsilon, best);
    }
    rep.delta_table.push_back(std::move(row));
  }

  rep.L_bar = cfg.solver.z_end;
  if (rep.L_bar > 0.0)
    rep.epsilon_min = H_func(rep.L_bar, rep.constants) /
                      G_func(rep.L_bar, 1.0, rep.constants, rep.variant);
  return rep;
}

void write_sweep_outputs(const SweepReport& rep, const ExperimentConfig& cfg,
                         const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (cfg.output.csv) {
    {
      std::ofstream csv(dir / "L_of_epsilon.csv");
      csv << "epsilon,L,saturated\n";
      for (const auto& r : rep.epsilon_table)
        csv << fmt_g17(r.epsilon) << ',' << fmt_g17(r.L) << ','
            << (r.saturated ? 1 : 0) << '\n';
    }
    {
      std::ofstream csv(dir / "delta_max.csv");
      csv << "epsilon,z,delta_max\n";
      for (const auto& r : rep.epsilon_table)
        for (const auto& [z, dm] : r.delta_max_samples)
          csv << fmt_g17(r.epsilon) << ',' << fmt_g17(z) << ',' << fmt_g17(dm)
              << '\n';
    }
    {
      std::ofstream csv(dir / "admissible_L.csv");
      csv << "delta,epsilon,max_admissible_L\n";
      for (const auto& r : rep.delta_table)
        for (const auto& [eps, L] : r.admissible_L)
          csv << fmt_g17(r.delta) << ',' << fmt_g17(eps) << ',' << fmt_g17(L)
              << '\n';
    }
  }
  if (cfg.output.json) {
    json j = {{"experiment", "bound_sweep"},
              {"constants", constants_json(rep.constants)},
              {"variant", to_string(rep.variant)},
              {"reverse", {{"L_bar", rep.L_bar}, {"epsilon_min", rep.epsilon_min}}}};
    json etab = json::array();
    for (const auto& r : rep.epsilon_table) {
      json samples = json::array();
      for (const auto& [z, dm] : r.delta_max_samples)
        samples.push_back(json{{"z", z}, {"delta_max", dm}});
      etab.push_back(json{{"epsilon", r.epsilon},
                          {"L", r.L},
                          {"saturated", r.saturated},
                          {"delta_max_samples", samples}});
    }
    j["epsilon_table"] = etab;
    json dtab = json::array();
    for (const auto& r : rep.delta_table) {
      json rows = json::array();
      for (const auto& [eps, L] : r.admissible_L)
        rows.push_back(json{{"epsilon", eps}, {"max_admissible_L", L}});
      dtab.push_back(json{{"delta", r.delta}, {"admissible_L", rows}});
    }
    j["delta_table"] = dtab;
    write_json(dir / "report.json", j);
  }
  if (cfg.output.svg && !rep.epsilon_table.empty()) {
    fs::create_directories(dir / "plots");
    std::vector<double> es, Ls;
    for (const auto& r : rep.epsilon_table) {
      es.push_back(r.epsilon);
      Ls.push_back(r.L);
    }
    write_line_chart((dir / "plots" / "L_of_epsilon.svg").string(),
                     "Admissible distance vs tolerance", "epsilon", "L",
                     {{"L(epsilon)", es, Ls, "#1f77b4"}});
  }
}

SimulateReport run_simulate(const ExperimentConfig& cfg) {
  if (!cfg.model.kind)
    fail(ErrorCode::ConfigError, "model.kind: required for simulate");
  const GridPtr grid = make_grid(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.n);

  SimulateReport rep;
  rep.model = *cfg.model.kind;
  ModelKind model;
  switch (rep.model) {
    case ModelTag::Dissipative:
      model = dissipative_model(cfg.model.c1, cfg.model.c2);
      break;
    case ModelTag::Integrable:
      model = integrable_model(cfg.model.c1, cfg.model.c2);
      break;
    case ModelTag::Cubic:
      model = cubic_model(cfg.model.rho);
      break;
  }

  ComplexField initial =
      rep.model == ModelTag::Cubic &&
              cfg.initial.kind == InitialSpec::Kind::Soliton
          ? soliton(cfg.initial.a, cfg.model.rho, 0.0, grid)
          : build_initial(cfg, grid);

  rep.trajectory = evolve(model, initial, cfg.solver.z_end, step_config(cfg));
  const double m0 = rep.trajectory.observables.front().l2;
  for (const auto& o : rep.trajectory.observables)
    if (m0 > 0.0)
      rep.mass_drift = std::max(rep.mass_drift, std::abs(o.l2 - m0) / m0);
  return rep;
}

void write_simulate_outputs(const SimulateReport& rep,
                            const ExperimentConfig& cfg,
                            const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (cfg.output.csv) {
    std::ofstream csv(dir / "metrics.csv");
    csv << "z,l2,t2_moment,t_ut_moment\n";
    for (std::size_t k = 0; k < rep.trajectory.z_values.size(); ++k) {
      const auto& o = rep.trajectory.observables[k];
      csv << fmt_g17(rep.trajectory.z_values[k]) << ',' << fmt_g17(o.l2) << ','
          << fmt_g17(o.t2_moment) << ',' << fmt_g17(o.t_ut_moment) << '\n';
    }
    fs::create_directories(dir / "fields");
    for (std::size_t k = 0; k < rep.trajectory.snapshots.size(); ++k) {
      // ceil keeps a trailing partial step from colliding with the previous
      // full-step snapshot
      const long step = static_cast<long>(
          std::ceil(rep.trajectory.z_values[k] / cfg.solver.dz - 1e-9));
      char name[32];
      std::snprintf(name, sizeof(name), "snapshot_%06ld.csv", step);
      write_field_csv((dir / "fields" / name).string(),
                      rep.trajectory.snapshots[k]);
    }
  }
  if (cfg.output.json) {
    const char* names[] = {"dissipative", "integrable", "cubic"};
    json j{{"experiment", "simulate"},
           {"model", names[static_cast<int>(rep.model)]},
           {"snapshots", rep.trajectory.z_values.size()},
           {"z_end", cfg.solver.z_end},
           {"mass_drift", rep.mass_drift}};
    write_json(dir / "report.json", j);
  }
  if (cfg.output.svg) {
    fs::create_directories(dir / "plots");
    std::vector<double> zs, l2s, t2s, tuts;
    for (std::size_t k = 0; k < rep.trajectory.z_values.size(); ++k) {
      zs.push_back(rep.trajectory.z_values[k]);
      l2s.push_back(rep.trajectory.observables[k].l2);
      t2s.push_back(rep.trajectory.observables[k].t2_moment);
      tuts.push_back(rep.trajectory.observables[k].t_ut_moment);
    }
    write_line_chart((dir / "plots" / "observables.svg").string(),
                     "Trajectory observables", "z", "norm",
                     {{"||.||_L2", zs, l2s, "#1f77b4"},
                      {"||t^2 .||", zs, t2s, "#2ca02c"},
                      {"||t d/dt .||", zs, tuts, "#d62728"}});
  }
}

PainleveReport run_painleve_check(const ExperimentConfig& cfg) {
  if (!cfg.family)
    fail(ErrorCode::ConfigError, "family: section required for painleve-check");
  const FamilySpec& spec = *cfg.family;

  PainleveReport rep;
  rep.tolerance = spec.tolerance;
  rep.z_grid.resize(cfg.z_grid.count);
  for (std::size_t i = 0; i < cfg.z_grid.count; ++i)
    rep.z_grid[i] = cfg.z_grid.z_min +
                    (cfg.z_grid.z_max - cfg.z_grid.z_min) *
                        static_cast<double>(i) /
                        static_cast<double>(cfg.z_grid.count - 1);

  CoefficientFamily fam;
  fam.f = spec.f;
  fam.g = spec.g;
  fam.h = spec.h;

  bool h_zero = true;
  for (double z : rep.z_grid)
    if (std::abs(fam.h(z)) > 1e-14) h_zero = false;

  if (spec.v2) {
    rep.v2_supplied = true;
    fam.v2 = *spec.v2;
    for (double z : rep.z_grid) rep.v2.push_back(fam.v2(z));
  } else {
    if (!h_zero)
      fail(ErrorCode::ConfigError,
           "family.v2: required when h != 0 (the v2 formula assumes h == 0)");
    rep.v2 = v2_from_fg(fam, rep.z_grid);
    fam.v2 = Coefficient::samples(rep.z_grid, rep.v2);
  }

  rep.residual = painleve_residual(fam, rep.z_grid);
  for (double r : rep.residual)
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(r));
  rep.integrable = rep.max_abs_residual < rep.tolerance;
  return rep;
}

void write_painleve_outputs(const PainleveReport& rep,
                            const ExperimentConfig& cfg,
                            const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (cfg.output.csv) {
    std::ofstream csv(dir / "metrics.csv");
    csv << "z,v2,residual\n";
    for (std::size_t i = 0; i < rep.z_grid.size(); ++i)
      csv << fmt_g17(rep.z_grid[i]) << ',' << fmt_g17(rep.v2[i]) << ','
          << fmt_g17(rep.residual[i]) << '\n';
  }
  if (cfg.output.json) {
    json j{{"experiment", "painleve_check"},
           {"max_abs_residual", rep.max_abs_residual},
           {"tolerance", rep.tolerance},
           {"integrable", rep.integrable},
           {"v2_supplied", rep.v2_supplied},
           {"v2_front", rep.v2.front()},
           {"v2_back", rep.v2.back()}};
    write_json(dir / "report.json", j);
  }
  if (cfg.output.svg) {
    fs::create_directories(dir / "plots");
    write_line_chart((dir / "plots" / "residual.svg").string(),
                     "Integrability residual", "z", "residual",
                     {{"residual", rep.z_grid, rep.residual, "#1f77b4"},
                      {"v2", rep.z_grid, rep.v2, "#2ca02c"}});
  }
}

}  // namespace nlse
