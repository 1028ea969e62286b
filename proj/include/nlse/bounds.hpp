#pragma once

#include <cstddef>
#include <vector>

#include "nlse/solver.hpp"

namespace nlse {

/// Prefactor convention for the distance bound and for G.
///
/// The Duhamel estimate behind the distance bound carries (c2^2/4) in front
/// of the moment integral; Squared keeps that factor through the Gronwall
/// step. PaperLiteral uses the weaker printed prefactor c2/4 instead. Both
/// are reported; Squared is the internally consistent default.
enum class CoefficientVariant { Squared, PaperLiteral };

const char* to_string(CoefficientVariant v);

/// Constants entering every bound evaluator.
struct BoundConstants {
  double K = 0.0;        ///< sup over both trajectories of |u|^2 + |v|^2
  double C = 0.0;        ///< Lipschitz constant of w -> |w|^2 w on the K-ball, (3/2)K
  double C_tilde = 0.0;  ///< Gronwall constant, max(4 sup||Q_TT||_2, 2 sup||Q||_inf^2)
  double c2 = 1.0;
  double delta = 0.0;    ///< bound on the initial moments ||t^2 v0||, ||t v0'||
};

/// Reads K, C, C_tilde off the three trajectories. u and v must share their
/// z sampling and grid; Q supplies the sup of ||Q_TT||_L2 and ||Q||_Linf^2
/// over its own snapshots. For |w|^2 w the bound
/// |f(a)-f(b)| <= (3/2)(|a|^2+|b|^2)|a-b| fixes C = (3/2)K.
BoundConstants estimate_constants(const Trajectory& u_traj,
                                  const Trajectory& v_traj,
                                  const Trajectory& Q_traj, double c2,
                                  double delta);

/// Gronwall envelope for ||T Q_T(Z)||: ((c2/2+1)delta + 1) e^{C~ Z/2} - 1.
double h_bound(double Z, const BoundConstants& c);

/// Envelope for ||T^2 Q(Z)||: delta + (8/C~)[(c2/2+1)delta + 1]
/// (e^{C~ Z/2} - 1) - 4Z, equal to the integral of 4 h_bound plus delta.
/// The C~ -> 0 limit replaces (8/C~)(e^{C~ Z/2}-1) by 4Z.
double f_bound(double Z, const BoundConstants& c);

/// f_bound with an explicit delta. Nondecreasing in Z for every delta >= 0
/// since the bracketed coefficient is >= 1.
double eta(double Z, double delta, const BoundConstants& c);

/// Envelope for ||t^2 v(z)||: e^{2 c2 z} eta(Z(z), delta).
double g_bound(double z, const BoundConstants& c);

/// Envelope for ||v(z) - u(z)||: (c2^2/4) eta(Z(z), delta) z e^{(2c2+C) z}
/// under Squared (c2/4 under PaperLiteral).
double distance_bound(double z, const BoundConstants& c,
                      CoefficientVariant variant = CoefficientVariant::Squared);

/// G(z, eps) = 4 eps e^{-(2c2+C) z} / (c2^2 z) (Squared; c2 z denominator
/// under PaperLiteral). Decreasing, singular at z = 0+.
double G_func(double z, double epsilon, const BoundConstants& c,
              CoefficientVariant variant = CoefficientVariant::Squared);

/// H(z) = (8/C~)(e^{C~ Z(z)/2} - 1) - 4 Z(z). Increasing from 0 with limit
/// (8/C~)(e^{C~/(4 c2)} - 1) - 2/c2 as z -> infinity.
double H_func(double z, const BoundConstants& c);

/// Geometric grid on [z_lo, horizon] used for monotonicity scans and
/// root bracketing; horizon defaults to 10/c2 when passed as 0.
std::vector<double> geometric_z_grid(const BoundConstants& c,
                                     std::size_t points = 512,
                                     double z_lo = 1e-6, double horizon = 0.0);

/// First root of G(., eps) - H(.) by bisection (1e-10 in z). When G - H > 0
/// through the whole horizon, returns the horizon with saturated set.
struct FindLResult {
  double L = 0.0;
  bool saturated = false;
};
FindLResult find_L(double epsilon, const BoundConstants& c,
                   CoefficientVariant variant = CoefficientVariant::Squared,
                   double horizon = 0.0);

/// Largest admissible delta for distance < epsilon on [0, L]:
///   [1 + (8/C~)(c2/2+1)(e^{C~ Z(L)/2} - 1)]^{-1} (G(L, eps) - H(L)).
/// Requires G(L, eps) > H(L), i.e. L below the find_L root.
double delta_max(double L, double epsilon, const BoundConstants& c,
                 CoefficientVariant variant = CoefficientVariant::Squared);

}  // namespace nlse
