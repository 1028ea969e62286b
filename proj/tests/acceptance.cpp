// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nlse/bounds.hpp"
#include "nlse/config.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"
#include "nlse/models.hpp"
#include "nlse/solver.hpp"
#include "nlse/transform.hpp"
#include "oracles.hpp"

using namespace nlse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return z;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Painleve reproduction over the (alpha, beta2, gamma) matrix.
Outcome criterion_painleve() {
  Outcome out;
  double worst_closed = 0.0, worst_fd = 0.0, worst_res = 0.0;
  const auto z = linspace(0.0, 2.0, 256);
  for (double alpha : {0.2, 0.5, 1.0})
    for (double beta2 : {-2.0, -1.0, 1.0, 2.0})
      for (double gamma : {1.0, 2.0}) {
        const double expect = alpha * alpha / (2.0 * beta2);

        CoefficientFamily fam;
        fam.f = Coefficient::constant(beta2 / 2.0);
        fam.g = Coefficient::exponential(-gamma, -alpha);
        const auto v2 = v2_from_fg(fam, z);
        for (double v : v2)
          worst_closed =
              std::max(worst_closed, std::abs(v - expect) / std::abs(expect));

        // finite-difference route: the same family given only as samples
        std::vector<double> fv(z.size()), gv(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
          fv[i] = beta2 / 2.0;
          gv[i] = -gamma * std::exp(-alpha * z[i]);
        }
        CoefficientFamily sampled;
        sampled.f = Coefficient::samples(z, fv);
        sampled.g = Coefficient::samples(z, gv);
        for (double v : v2_from_fg(sampled, z))
          worst_fd =
              std::max(worst_fd, std::abs(v - expect) / std::abs(expect));

        fam.v2 = Coefficient::samples(z, v2);
        for (double r : painleve_residual(fam, z))
          worst_res = std::max(worst_res, std::abs(r));
      }
  out.pass = worst_closed < 1e-8 && worst_fd < 1e-4 && worst_res < 1e-8;
  std::ostringstream os;
  os << "max rel err closed " << worst_closed << " (<1e-8), fd " << worst_fd
     << " (<1e-4), residual " << worst_res << " (<1e-8)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 2. Solver order on the a = 1 soliton over Z in [0, 1].
Outcome criterion_solver_order() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.grid = {-20.0, 20.0, 1024};
  cfg.initial.kind = InitialSpec::Kind::Soliton;
  cfg.initial.a = 1.0;
  cfg.solver.dz = 4e-3;  // the study visits 4e-3, 2e-3, 1e-3, 5e-4
  cfg.solver.z_end = 1.0;
  cfg.solver.snapshot_every = 100000;
  const ConvergenceReport rep = run_convergence(cfg);

  const double err_at_1e3 = rep.errors[2];
  const bool order_ok = rep.fitted_order >= 1.8 && rep.fitted_order <= 2.2;
  const bool abs_ok = err_at_1e3 < 1e-6;
  out.pass = order_ok && abs_ok;
  std::ostringstream os;
  os << "fitted order " << rep.fitted_order << " (in [1.8,2.2]: "
     << (order_ok ? "yes" : "NO") << "), |err|_L2 at dz=1e-3 = " << err_at_1e3
     << " (<1e-6: " << (abs_ok ? "yes" : "NO")
     << "; relative = " << err_at_1e3 / 2.0 << ", ratios";
  for (double r : rep.ratios) os << ' ' << r;
  os << ")";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 3. Mass conservation for all three models, Gaussian data, z_end = 2.
Outcome criterion_conservation() {
  Outcome out;
  const auto grid = make_grid(-20.0, 20.0, 1024);
  const ComplexField v0 = make_gaussian(grid, 1.0, 1.0);
  SplitStepConfig sc;
  sc.dz = 1e-3;
  sc.snapshot_every = 200;
  double worst = 0.0;
  for (const ModelKind& m : {dissipative_model(1, 1.0),
                             integrable_model(1, 1.0), cubic_model(1)}) {
    const Trajectory traj = evolve(m, v0, 2.0, sc);
    const double m0 = traj.observables.front().l2;
    for (const auto& o : traj.observables)
      worst = std::max(worst, std::abs(o.l2 - m0) / m0);
  }
  out.pass = worst < 1e-10;
  std::ostringstream os;
  os << "max relative mass drift " << worst << " (<1e-10)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 4. Transform fidelity: round trips and the independently propagated
//    transformed soliton.
Outcome criterion_transform() {
  Outcome out;
  const double c2 = 1.0;
  const MapParams p{c2};
  const auto grid = make_grid(-20.0, 20.0, 2048);

  double worst_rt = 0.0;
  for (double z : {0.25, 0.5, 1.0}) {  // c2 z <= 1
    // inverse then forward from an edge-decaying chirped laboratory field
    ComplexField v_ref = make_field(grid, z);
    for (std::size_t j = 0; j < grid->n(); ++j) {
      const double t = grid->t(j);
      v_ref.values[j] =
          std::polar(1.0, c2 / 4.0 * t * t) * 0.8 * std::exp(-t * t / 2.0);
    }
    const ComplexField back = forward_map(inverse_map(v_ref, p), z, p);
    worst_rt =
        std::max(worst_rt, l2_distance(back, v_ref) / l2_norm(v_ref));

    // forward then inverse from a sampled cubic-frame profile
    ComplexField Q_ref = make_gaussian(grid, 0.7, 1.0);
    Q_ref.z = z_to_Z(z, c2);
    const ComplexField Q_back = inverse_map(forward_map(Q_ref, z, p), p);
    worst_rt =
        std::max(worst_rt, l2_distance(Q_back, Q_ref) / l2_norm(Q_ref));
  }

  // propagate the z = 0 trace of the transformed soliton under the
  // harmonic-potential model and compare with the analytic transform
  const ComplexField v0 = forward_map(soliton_profile(1.0, 0.0), 0.0, grid, p);
  SplitStepConfig sc;
  sc.dz = 1e-3;
  sc.snapshot_every = 100000;
  const Trajectory traj = evolve(integrable_model(1, c2), v0, 0.5, sc);
  const ComplexField v_exact =
      forward_map(soliton_profile(1.0, z_to_Z(0.5, c2)), 0.5, grid, p);
  const double prop_err =
      l2_distance(traj.snapshots.back(), v_exact) / l2_norm(v_exact);

  out.pass = worst_rt < 1e-8 && prop_err < 1e-4;
  std::ostringstream os;
  os << "round-trip rel err " << worst_rt << " (<1e-8), propagated soliton "
     << prop_err << " (<1e-4)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 5. Moment-norm shift relation along a trajectory of the potential model.
Outcome criterion_lemma_shift() {
  Outcome out;
  const double c2 = 1.0;
  const MapParams p{c2};
  const auto grid = make_grid(-20.0, 20.0, 2048);
  const ComplexField v0 = make_gaussian(grid, 0.5, 1.0);
  SplitStepConfig sc;
  sc.dz = 1e-3;
  sc.snapshot_every = 100;
  const Trajectory traj = evolve(integrable_model(1, c2), v0, 1.0, sc);
  double worst = 0.0;
  for (const auto& snap : traj.snapshots) {
    const LemmaShiftResult r = lemma_shift_check(snap, p);
    if (r.lhs > 0.0)
      worst = std::max(worst, std::abs(r.lhs - r.rhs) / r.lhs);
  }
  out.pass = worst < 1e-4;
  std::ostringstream os;
  os << "max relative mismatch " << worst << " (<1e-4) over "
     << traj.snapshots.size() << " snapshots";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 6. Bound-chain identity by quadrature over the (c2, C~, delta) lattice.
Outcome criterion_bound_chain() {
  Outcome out;
  double worst = 0.0;
  for (double c2 : {0.5, 1.0, 2.0})
    for (double ct : {0.5, 1.0, 2.0})
      for (double delta : {0.5, 1.0, 2.0}) {
        BoundConstants c;
        c.c2 = c2;
        c.C_tilde = ct;
        c.delta = delta;
        const double Z = 0.9 * map_horizon(c2);
        const double integral = oracle::composite_simpson(
            [&](double s) { return h_bound(s, c); }, 0.0, Z, 10000);
        worst =
            std::max(worst, std::abs(f_bound(Z, c) - (delta + 4.0 * integral)));
      }
  out.pass = worst < 1e-10;
  std::ostringstream os;
  os << "max |f_bound - (delta + 4 int h_bound)| = " << worst << " (<1e-10)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 7. Envelope domination with the auto-calibrated delta.
Outcome criterion_domination() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.model.c1 = 1;
  cfg.model.c2 = 1.0;
  cfg.grid = {-20.0, 20.0, 1024};
  cfg.solver = {1e-3, 1.0, 25};
  cfg.initial.kind = InitialSpec::Kind::Gaussian;
  cfg.initial.amplitude = 1.0;
  cfg.initial.width = 1.0;
  cfg.bounds.epsilon = 0.1;
  cfg.bounds.auto_delta = true;  // delta = 0.9 delta_max(L_run, eps)
  cfg.bounds.variant = CoefficientVariant::Squared;

  const ClosenessReport rep = run_closeness(cfg);
  out.pass = rep.domination_pass;
  std::ostringstream os;
  os << "delta " << rep.delta << ", L_run " << rep.L_run << ", L(eps) "
     << rep.L_of_epsilon << ", samples " << rep.samples.size()
     << ", domination " << (rep.domination_pass ? "holds" : "VIOLATED")
     << ", distance<eps " << (rep.distance_within_epsilon ? "yes" : "NO");
  for (const auto& v : rep.violations) os << "; " << v;
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 8. Structure of G and H on the geometric grid, find_L root residual.
Outcome criterion_gh_structure() {
  Outcome out;
  BoundConstants c;
  c.K = 1.0;
  c.C = 1.5;
  c.C_tilde = 2.0;
  c.c2 = 1.0;
  c.delta = 0.1;
  const double eps = 0.1;

  const auto grid = geometric_z_grid(c);
  bool g_decreasing = true, h_increasing = true;
  double prev_g = 1e300, prev_h = -1e300;
  for (double z : grid) {
    const double g = G_func(z, eps, c);
    const double h = H_func(z, c);
    if (!(g < prev_g)) g_decreasing = false;
    if (!(h > prev_h)) h_increasing = false;
    prev_g = g;
    prev_h = h;
  }
  const double h_small = H_func(grid.front(), c);
  const double h_limit =
      8.0 / c.C_tilde * std::expm1(c.C_tilde / (4.0 * c.c2)) - 2.0 / c.c2;
  const double h_tail_err = std::abs(H_func(grid.back(), c) - h_limit);
  const FindLResult lr = find_L(eps, c);
  const double root_res = std::abs(G_func(lr.L, eps, c) - H_func(lr.L, c));

  out.pass = g_decreasing && h_increasing && h_small < 1e-6 &&
             h_tail_err < 1e-3 && !lr.saturated && root_res < 1e-8;
  std::ostringstream os;
  os << "G decreasing " << (g_decreasing ? "yes" : "NO") << ", H increasing "
     << (h_increasing ? "yes" : "NO") << ", H(z_min) = " << h_small
     << " (<1e-6), |H(z_max) - limit| = " << h_tail_err
     << " (<1e-3), root residual " << root_res << " (<1e-8)";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 9. Determinism of the closeness outputs.
Outcome criterion_determinism() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.model.c1 = 1;
  cfg.model.c2 = 1.0;
  cfg.grid = {-16.0, 16.0, 512};
  cfg.solver = {2e-3, 0.3, 25};
  cfg.initial.kind = InitialSpec::Kind::Gaussian;
  cfg.bounds.epsilon = 0.1;
  cfg.bounds.delta = 0.02;
  cfg.output.svg = false;

  const fs::path base = fs::temp_directory_path() / "nlse_acceptance_det";
  const fs::path a = base / "a", b = base / "b";
  fs::remove_all(base);
  const ClosenessReport r1 = run_closeness(cfg);
  write_closeness_outputs(r1, cfg, a.string());
  const ClosenessReport r2 = run_closeness(cfg);
  write_closeness_outputs(r2, cfg, b.string());

  const bool metrics_equal =
      slurp(a / "metrics.csv") == slurp(b / "metrics.csv");
  const bool report_equal =
      slurp(a / "report.json") == slurp(b / "report.json");
  const bool nonempty = !slurp(a / "metrics.csv").empty() &&
                        !slurp(a / "report.json").empty();
  fs::remove_all(base);

  out.pass = metrics_equal && report_equal && nonempty;
  std::ostringstream os;
  os << "metrics.csv byte-identical " << (metrics_equal ? "yes" : "NO")
     << ", report.json byte-identical " << (report_equal ? "yes" : "NO");
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"painleve reproduction", criterion_painleve},
      {"solver order", criterion_solver_order},
      {"mass conservation", criterion_conservation},
      {"transform fidelity", criterion_transform},
      {"moment-shift relation", criterion_lemma_shift},
      {"bound-chain identity", criterion_bound_chain},
      {"envelope domination", criterion_domination},
      {"G/H structure", criterion_gh_structure},
      {"determinism", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
