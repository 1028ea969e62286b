#include "nlse/transform.hpp"

#include <cmath>
#include <sstream>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

void validate_c2(double c2) {
  if (!(c2 > 0.0)) fail(ErrorCode::InvalidParams, "map: c2 must be > 0");
}

std::complex<double> chirp(double c2, double t, double z) {
  return std::polar(1.0, c2 / 4.0 * t * t) * std::exp(-c2 / 2.0 * z);
}

}  // namespace

double z_to_Z(double z, double c2) {
  validate_c2(c2);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "z_to_Z: z must be >= 0");
  return -std::expm1(-2.0 * c2 * z) / (2.0 * c2);
}

double Z_to_z(double Z, double c2) {
  validate_c2(c2);
  if (Z < 0.0) fail(ErrorCode::OutOfRange, "Z_to_z: Z must be >= 0");
  const double arg = 1.0 - 2.0 * c2 * Z;
  if (!(arg > 0.0))
    fail(ErrorCode::OutOfRange, "Z_to_z: Z at or beyond the map horizon");
  return -std::log(arg) / (2.0 * c2);
}

double map_horizon(double c2) {
  validate_c2(c2);
  return 0.5 / c2;
}

ComplexField forward_map(
    const std::function<std::complex<double>(double)>& Q_profile, double z,
    GridPtr grid, const MapParams& params) {
  validate_c2(params.c2);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "forward_map: z must be >= 0");
  ComplexField v = make_field(std::move(grid), z);
  const double shrink = std::exp(-params.c2 * z);
  for (std::size_t j = 0; j < v.grid->n(); ++j) {
    const double t = v.grid->t(j);
    v.values[j] = chirp(params.c2, t, z) * Q_profile(shrink * t);
  }
  return v;
}

ComplexField forward_map(const ComplexField& Q_at_Z, double z,
                         const MapParams& params) {
  validate_c2(params.c2);
  if (z < 0.0) fail(ErrorCode::NegativeZ, "forward_map: z must be >= 0");
  const double Z = z_to_Z(z, params.c2);
  if (std::abs(Q_at_Z.z - Z) > 1e-9 * std::max(1.0, std::abs(Z)))
    fail(ErrorCode::Precondition,
         "forward_map: field coordinate does not equal Z(z)");
  const FieldInterpolant interp(Q_at_Z, params.interp);
  ComplexField v = make_field(Q_at_Z.grid, z);
  const double shrink = std::exp(-params.c2 * z);
  // the contraction is toward t = 0; a box that does not contain the scaled
  // range cannot supply the needed samples
  const Grid& grid = *v.grid;
  const double tol = 1e-12 * std::max(1.0, grid.length());
  const double lo_needed = shrink * grid.t(0);
  const double hi_needed = shrink * grid.t(grid.n() - 1);
  if (std::min(lo_needed, hi_needed) < grid.t_min() - tol ||
      std::max(lo_needed, hi_needed) > grid.t_max() + tol)
    fail(ErrorCode::OutOfBox,
         "forward_map: scaled points exit the sampled field's box");
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double t = grid.t(j);
    v.values[j] = chirp(params.c2, t, z) * interp(shrink * t);
  }
  return v;
}

ComplexField inverse_map(const ComplexField& v, const MapParams& params) {
  validate_c2(params.c2);
  const double z = v.z;
  if (z < 0.0) fail(ErrorCode::NegativeZ, "inverse_map: field z must be >= 0");
  const double Z = z_to_Z(z, params.c2);
  const Grid& grid = *v.grid;
  const std::size_t n = grid.n();

  // Remove the chirp at the grid points first; what remains is the dilated
  // cubic-model profile, which interpolates far better than the chirped
  // field itself.
  ComplexField flat = v;
  for (std::size_t j = 0; j < n; ++j)
    flat.values[j] *= std::conj(chirp(params.c2, grid.t(j), 0.0));

  const double dilate = std::exp(params.c2 * z);
  const double lo = grid.t_min();
  const double hi = grid.t_min() + grid.length();
  const double tol = 1e-12 * std::max(1.0, grid.length());

  bool leaves_box = false;
  for (std::size_t j = 0; j < n && !leaves_box; ++j) {
    const double p = dilate * grid.t(j);
    leaves_box = p < lo - tol || p > hi + tol;
  }
  if (leaves_box) {
    // Zero extension is exact only if the field carries no mass at the edge;
    // the threshold is relative to the peak so small fields are judged by
    // their own scale.
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    double edge_max = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
      edge_max = std::max(edge_max, std::abs(v.values[j]));
      edge_max = std::max(edge_max, std::abs(v.values[n - 1 - j]));
    }
    const double peak = linf_norm(v);
    if (peak > 0.0 && edge_max > params.edge_tolerance * peak) {
      double support = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(v.values[j]) > params.edge_tolerance * peak)
          support = std::max(support, std::abs(grid.centered_t(j)));
      std::ostringstream os;
      os << "inverse_map: dilated sample points leave the box and the field "
            "is not negligible at the edge (max edge |v| = "
         << edge_max << ")";
      if (support > 0.0) {
        const double half = 0.5 * grid.length();
        os << "; admissible up to z ~ "
           << std::log(half / support) / params.c2;
      }
      fail(ErrorCode::OutOfBox, os.str());
    }
  }

  const FieldInterpolant interp(flat, params.interp);
  ComplexField Q = make_field(v.grid, Z);
  const double amp = std::exp(params.c2 / 2.0 * z);
  for (std::size_t j = 0; j < n; ++j) {
    const double p = dilate * grid.t(j);
    if (p < lo - tol || p > hi + tol) continue;  // certified negligible
    Q.values[j] = amp * interp(std::min(std::max(p, lo), hi));
  }
  return Q;
}

ComplexField soliton(double a, int rho, double Z, GridPtr grid) {
  if (!(a > 0.0)) fail(ErrorCode::InvalidParams, "soliton: a must be > 0");
  if (rho == -1)
    fail(ErrorCode::DefocusingSoliton,
         "soliton: the defocusing model has no bright soliton");
  if (rho != 1) fail(ErrorCode::InvalidParams, "soliton: rho must be +1");
  ComplexField Q = make_field(std::move(grid), Z);
  const std::complex<double> phase = std::polar(1.0, a * a * Z);
  const double amp = a * std::sqrt(2.0);
  for (std::size_t j = 0; j < Q.grid->n(); ++j)
    Q.values[j] = amp / std::cosh(a * Q.grid->t(j)) * phase;
  return Q;
}

std::function<std::complex<double>(double)> soliton_profile(double a,
                                                            double Z) {
  if (!(a > 0.0)) fail(ErrorCode::InvalidParams, "soliton: a must be > 0");
  const std::complex<double> phase = std::polar(1.0, a * a * Z);
  const double amp = a * std::sqrt(2.0);
  return [amp, a, phase](double T) { return amp / std::cosh(a * T) * phase; };
}

LemmaShiftResult lemma_shift_check(const ComplexField& v,
                                   const MapParams& params) {
  LemmaShiftResult r;
  r.lhs = weighted_norm_t2(v);
  const ComplexField Q = inverse_map(v, params);
  r.rhs = std::exp(2.0 * params.c2 * v.z) * weighted_norm_t2(Q);
  return r;
}

}  // namespace nlse
