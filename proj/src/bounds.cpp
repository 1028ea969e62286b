#include "nlse/bounds.hpp"

#include <cmath>
#include <sstream>

#include "nlse/errors.hpp"
#include "nlse/transform.hpp"

namespace nlse {

namespace {

// (8/C~)(e^{C~ Z/2} - 1) with the removable C~ = 0 limit 4Z.
double exp_term(double c_tilde, double Z) {
  if (c_tilde == 0.0) return 4.0 * Z;
  return 8.0 * std::expm1(0.5 * c_tilde * Z) / c_tilde;
}

double g_prefactor(double c2, CoefficientVariant variant) {
  return variant == CoefficientVariant::Squared ? c2 * c2 : c2;
}

void check_constants(const BoundConstants& c) {
  if (!(c.c2 > 0.0) || c.K < 0.0 || c.C < 0.0 || c.C_tilde < 0.0 ||
      c.delta < 0.0)
    fail(ErrorCode::InvalidParams, "bound constants: negative entry");
}

}  // namespace

const char* to_string(CoefficientVariant v) {
  return v == CoefficientVariant::Squared ? "squared" : "paper_literal";
}

BoundConstants estimate_constants(const Trajectory& u_traj,
                                  const Trajectory& v_traj,
                                  const Trajectory& Q_traj, double c2,
                                  double delta) {
  if (u_traj.snapshots.empty() || v_traj.snapshots.empty() ||
      Q_traj.snapshots.empty())
    fail(ErrorCode::EmptyTrajectory, "estimate_constants: empty trajectory");
  if (u_traj.snapshots.size() != v_traj.snapshots.size() ||
      !same_grid(*u_traj.snapshots.front().grid,
                 *v_traj.snapshots.front().grid))
    fail(ErrorCode::Precondition,
         "estimate_constants: u and v trajectories must share sampling");
  if (!(c2 > 0.0))
    fail(ErrorCode::InvalidParams, "estimate_constants: c2 must be > 0");
  if (delta < 0.0)
    fail(ErrorCode::InvalidParams, "estimate_constants: delta must be >= 0");

  BoundConstants c;
  c.c2 = c2;
  c.delta = delta;

  for (std::size_t s = 0; s < u_traj.snapshots.size(); ++s) {
    const auto& us = u_traj.snapshots[s].values;
    const auto& vs = v_traj.snapshots[s].values;
    for (std::size_t j = 0; j < us.size(); ++j)
      c.K = std::max(c.K, std::norm(us[j]) + std::norm(vs[j]));
  }
  c.C = 1.5 * c.K;

  for (const auto& Q : Q_traj.snapshots) {
    const double qtt = l2_norm(spectral_second_derivative(Q));
    const double qinf = linf_norm(Q);
    c.C_tilde = std::max(c.C_tilde, 4.0 * qtt);
    c.C_tilde = std::max(c.C_tilde, 2.0 * qinf * qinf);
  }
  return c;
}

double h_bound(double Z, const BoundConstants& c) {
  check_constants(c);
  if (Z < 0.0) fail(ErrorCode::NegativeZ, "h_bound: Z must be >= 0");
  return ((0.5 * c.c2 + 1.0) * c.delta + 1.0) * std::exp(0.5 * c.C_tilde * Z) -
         1.0;
}

double eta(double Z, double delta, const BoundConstants& c) {
  check_constants(c);
  if (Z < 0.0) fail(ErrorCode::NegativeZ, "eta: Z must be >= 0");
  if (delta < 0.0) fail(ErrorCode::InvalidParams, "eta: delta must be >= 0");
  return delta +
         ((0.5 * c.c2 + 1.0) * delta + 1.0) * exp_term(c.C_tilde, Z) - 4.0 * Z;
}

double f_bound(double Z, const BoundConstants& c) { return eta(Z, c.delta, c); }

double g_bound(double z, const BoundConstants& c) {
  check_constants(c);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "g_bound: z must be >= 0");
  return std::exp(2.0 * c.c2 * z) * eta(z_to_Z(z, c.c2), c.delta, c);
}

double distance_bound(double z, const BoundConstants& c,
                      CoefficientVariant variant) {
  check_constants(c);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "distance_bound: z must be >= 0");
  return 0.25 * g_prefactor(c.c2, variant) * eta(z_to_Z(z, c.c2), c.delta, c) *
         z * std::exp((2.0 * c.c2 + c.C) * z);
}

double G_func(double z, double epsilon, const BoundConstants& c,
              CoefficientVariant variant) {
  check_constants(c);
  if (!(z > 0.0)) fail(ErrorCode::NonpositiveZ, "G: z must be > 0");
  return 4.0 * epsilon * std::exp(-(2.0 * c.c2 + c.C) * z) /
         (g_prefactor(c.c2, variant) * z);
}

double H_func(double z, const BoundConstants& c) {
  check_constants(c);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "H: z must be >= 0");
  const double Z = z_to_Z(z, c.c2);
  return exp_term(c.C_tilde, Z) - 4.0 * Z;
}

std::vector<double> geometric_z_grid(const BoundConstants& c,
                                     std::size_t points, double z_lo,
                                     double horizon) {
  check_constants(c);
  if (horizon <= 0.0) horizon = 10.0 / c.c2;
  if (points < 2 || !(z_lo > 0.0) || !(horizon > z_lo))
    fail(ErrorCode::InvalidParams, "geometric_z_grid: bad range");
  std::vector<double> zs(points);
  const double ratio = std::log(horizon / z_lo);
  for (std::size_t i = 0; i < points; ++i)
    zs[i] = z_lo * std::exp(ratio * static_cast<double>(i) /
                            static_cast<double>(points - 1));
  zs.back() = horizon;
  return zs;
}

FindLResult find_L(double epsilon, const BoundConstants& c,
                   CoefficientVariant variant, double horizon) {
  check_constants(c);
  if (!(epsilon > 0.0))
    fail(ErrorCode::InvalidParams, "find_L: epsilon must be > 0");
  if (horizon <= 0.0) horizon = 10.0 / c.c2;

  const auto diff = [&](double z) {
    return G_func(z, epsilon, c, variant) - H_func(z, c);
  };

  // G blows up at 0+ while H(0) = 0, so expand the lower bracket until the
  // difference is positive.
  double z_lo = 1e-6;
  while (diff(z_lo) <= 0.0) {
    z_lo *= 0.1;
    if (z_lo < 1e-15) {
      std::ostringstream os;
      os << "find_L: no positive bracket down to z = " << z_lo
         << " (epsilon = " << epsilon << ", C = " << c.C
         << ", C~ = " << c.C_tilde << ")";
      fail(ErrorCode::BracketFailure, os.str());
    }
  }

  const auto grid = geometric_z_grid(c, 512, z_lo, horizon);
  double a = grid.front();
  double b = 0.0;
  bool bracketed = false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (diff(grid[i]) <= 0.0) {
      a = grid[i - 1];
      b = grid[i];
      bracketed = true;
      break;
    }
    a = grid[i];
  }
  if (!bracketed) return {horizon, true};

  while (b - a > 1e-10) {
    const double m = 0.5 * (a + b);
    (diff(m) > 0.0 ? a : b) = m;
  }
  return {0.5 * (a + b), false};
}

double delta_max(double L, double epsilon, const BoundConstants& c,
                 CoefficientVariant variant) {
  check_constants(c);
  if (!(L > 0.0)) fail(ErrorCode::NonpositiveZ, "delta_max: L must be > 0");
  if (!(epsilon > 0.0))
    fail(ErrorCode::InvalidParams, "delta_max: epsilon must be > 0");
  const double gap = G_func(L, epsilon, c, variant) - H_func(L, c);
  if (!(gap > 0.0))
    fail(ErrorCode::LTooLarge, "delta_max: G(L) <= H(L); take L below find_L");
  const double bracket =
      1.0 + (0.5 * c.c2 + 1.0) * exp_term(c.C_tilde, z_to_Z(L, c.c2));
  return gap / bracket;
}

}  // namespace nlse
