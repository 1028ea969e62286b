#pragma once

#include <complex>
#include <functional>

#include "nlse/field.hpp"
#include "nlse/interpolate.hpp"

namespace nlse {

/// Parameters of the exact maps between the harmonic-potential model
///   i v_z + v_tt + c1 e^{-c2 z}|v|^2 v + (c2^2/4) t^2 v = 0
/// and the autonomous cubic model i Q_Z + Q_TT + rho |Q|^2 Q = 0:
///
///   T = e^{-c2 z} t,   Z = (1 - e^{-2 c2 z})/(2 c2),
///   v(z,t) = e^{i (c2/4) t^2 - (c2/2) z} Q(Z, T),
///
/// with inverse t = (1 - 2 c2 Z)^{-1/2} T, z = -ln(1 - 2 c2 Z)/(2 c2).
/// Z lives in the half-open interval [0, 1/(2 c2)).
struct MapParams {
  double c2 = 1.0;
  InterpMethod interp = InterpMethod::Trigonometric;
  /// Largest edge amplitude tolerated, relative to the field's peak, when
  /// dilated sample points leave the box (see inverse_map).
  double edge_tolerance = 1e-4;
};

double z_to_Z(double z, double c2);
double Z_to_z(double Z, double c2);
double map_horizon(double c2);  // 1/(2 c2), never attained

/// v(z, t_j) from an analytic profile T -> Q(Z(z), T).
ComplexField forward_map(const std::function<std::complex<double>(double)>& Q_profile,
                         double z, GridPtr grid, const MapParams& params);

/// v(z, t_j) from a sampled Q at coordinate Z(z) (checked). The required
/// points e^{-c2 z} t_j contract into the box, so sampled evaluation always
/// stays inside; off-grid values come from the configured interpolant.
ComplexField forward_map(const ComplexField& Q_at_Z, double z,
                         const MapParams& params);

/// Q(Z(z), T_j) from v at z = v.z. The required points e^{c2 z} T_j dilate
/// out of the box for the outer samples; those are taken as zero when the
/// field is certifiably negligible at the box edge (max |v| over the outer
/// 5% of samples at most edge_tolerance), otherwise OutOfBox is thrown with
/// the largest admissible z. The chirp is removed at the grid points before
/// interpolating, so the interpolant acts on the slowly varying factor.
ComplexField inverse_map(const ComplexField& v, const MapParams& params);

/// Bright soliton of the cubic model, Q(Z,T) = a sqrt(2/rho) sech(a T)
/// e^{i a^2 Z}; only rho = +1 admits it.
ComplexField soliton(double a, int rho, double Z, GridPtr grid);
std::function<std::complex<double>(double)> soliton_profile(double a, double Z);

/// Both sides of the moment-norm shift relation
///   ||t^2 v(z)|| = e^{2 c2 z} ||T^2 Q(Z(z))||,
/// with Q obtained through inverse_map. The caller asserts closeness.
struct LemmaShiftResult {
  double lhs;
  double rhs;
};
LemmaShiftResult lemma_shift_check(const ComplexField& v,
                                   const MapParams& params);

}  // namespace nlse
