#pragma once

#include <functional>
#include <vector>

#include "nlse/coefficients.hpp"

namespace nlse {

/// Physical single-mode fiber parameters for
///   i u_z = -(beta2/2) u_tt + gamma e^{-alpha z} |u|^2 u,
/// with alpha the loss (1/length), beta2 the group-velocity dispersion
/// (time^2/length), gamma the Kerr coefficient (1/(power*length)), T0 the
/// input pulse width and P0 the peak power. Dimensional values appearing in
/// examples and tests are representative choices, not measured fiber data.
struct FiberParams {
  double alpha;
  double beta2;
  double gamma;
  double T0;
  double P0;
};

void validate(const FiberParams& p);

double dispersion_length(const FiberParams& p);  // T0^2 / |beta2|
double nonlinear_length(const FiberParams& p);   // 1 / (gamma P0)

/// Parameters of the dimensionless models:
///   i u_z + u_tt + c1 e^{-c2 z} |u|^2 u = 0
///   i v_z + v_tt + c1 e^{-c2 z} |v|^2 v + (c2^2/4) t^2 v = 0
///   i Q_Z + Q_TT + rho |Q|^2 Q = 0
/// c1 = +1 focusing (anomalous dispersion), -1 defocusing; rho likewise.
struct DimensionlessParams {
  int c1 = 1;
  double c2 = 1.0;
  int rho = 1;
};

void validate(const DimensionlessParams& p);

/// Result of the physical -> dimensionless reduction.
///
/// Substituting u(z,t) = sqrt(P0) U(z/Ls, t/Ts) with
///   Ls = 1/(gamma P0),  Ts = sqrt(|beta2| Ls / 2)
/// turns the fiber equation into
///   i U_zeta = -sign(beta2) U_tautau + e^{-c2 zeta} |U|^2 U,  c2 = alpha Ls.
/// For beta2 > 0 this is already the dimensionless model with c1 = -1; for
/// beta2 < 0 conjugating the envelope flips both signs and yields c1 = +1
/// (conjugated is set in that case). The scales invert exactly:
///   alpha = c2/Ls, |beta2| = 2 Ts^2/Ls, gamma P0 = 1/Ls.
/// The dispersion/nonlinear length ratio is reported as an advisory regime
/// check (the reduction is exact regardless).
struct NormalizeResult {
  DimensionlessParams params;
  double length_scale;
  double time_scale;
  double amplitude_scale;
  double ld_lnl_ratio;
  bool regime_ok;
  bool conjugated;
};

NormalizeResult normalize(const FiberParams& p, double regime_factor = 10.0);

/// The quadratic-potential coefficient forced on a lossless family (h == 0):
///   v2(z) = [g^2 f f_zz - f^2 g g_zz + 2 f^2 g_z^2 - g^2 f_z^2
///            - g f g_z f_z] / (4 f^3 g^2).
/// Closed-form derivatives are used when both f and g provide them;
/// otherwise 4th-order finite differences on z_grid (uniform, >= 5 points).
std::vector<double> v2_from_fg(const CoefficientFamily& family,
                               const std::vector<double>& z_grid);

/// Pointwise residual of the integrability constraint on (f, g, h, v2):
///   (4 f^2 g g_z - 2 f f_z g^2) h - 4 f^2 g^2 h^2 - 2 f^2 g^2 h_z
///   - g^2 f f_zz + f^2 g g_zz - 2 f^2 g_z^2 + f_z^2 g^2 + f_z g f g_z
///   + 4 v2 f^3 g^2.
/// Near-zero values certify the family as integrable.
std::vector<double> painleve_residual(const CoefficientFamily& family,
                                      const std::vector<double>& z_grid);

/// Amplitude factor exp(-int_0^z h) that removes a loss/gain term by gauge.
/// The generic overload integrates by adaptive quadrature; the Coefficient
/// overload uses the closed-form integral when one exists.
double gauge_remove_loss(const std::function<double(double)>& h, double z);
double gauge_remove_loss(const Coefficient& h, double z);

}  // namespace nlse
