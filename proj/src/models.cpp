#include "nlse/models.hpp"

#include <cmath>

#include "nlse/errors.hpp"
#include "nlse/quadrature.hpp"

namespace nlse {

void validate(const FiberParams& p) {
  if (!(p.alpha > 0.0) || !(p.gamma > 0.0) || !(p.T0 > 0.0) || !(p.P0 > 0.0) ||
      p.beta2 == 0.0)
    fail(ErrorCode::InvalidParams,
         "fiber params: need alpha, gamma, T0, P0 > 0 and beta2 != 0");
}

void validate(const DimensionlessParams& p) {
  if (p.c1 != 1 && p.c1 != -1)
    fail(ErrorCode::InvalidParams, "params: c1 must be +1 or -1");
  if (p.rho != 1 && p.rho != -1)
    fail(ErrorCode::InvalidParams, "params: rho must be +1 or -1");
  if (!(p.c2 > 0.0)) fail(ErrorCode::InvalidParams, "params: c2 must be > 0");
}

double dispersion_length(const FiberParams& p) {
  return p.T0 * p.T0 / std::abs(p.beta2);
}

double nonlinear_length(const FiberParams& p) { return 1.0 / (p.gamma * p.P0); }

NormalizeResult normalize(const FiberParams& p, double regime_factor) {
  validate(p);
  if (!(regime_factor >= 1.0))
    fail(ErrorCode::InvalidParams, "normalize: regime_factor must be >= 1");
  NormalizeResult r;
  r.length_scale = nonlinear_length(p);
  r.time_scale = std::sqrt(std::abs(p.beta2) * r.length_scale / 2.0);
  r.amplitude_scale = std::sqrt(p.P0);
  r.conjugated = p.beta2 < 0.0;
  r.params.c1 = p.beta2 < 0.0 ? 1 : -1;
  r.params.c2 = p.alpha * r.length_scale;
  r.params.rho = r.params.c1;  // the lens map preserves the cubic sign
  r.ld_lnl_ratio = dispersion_length(p) / nonlinear_length(p);
  r.regime_ok = r.ld_lnl_ratio <= regime_factor &&
                r.ld_lnl_ratio >= 1.0 / regime_factor;
  return r;
}

namespace {

struct CoeffTrack {
  std::vector<double> val, d1, d2;
};

void check_uniform(const std::vector<double>& z) {
  const double h = z[1] - z[0];
  for (std::size_t i = 1; i < z.size(); ++i) {
    const double expect = z[0] + static_cast<double>(i) * h;
    if (std::abs(z[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
      fail(ErrorCode::Precondition,
           "finite differences require a uniform z grid");
  }
}

// 4th-order stencils in the interior, one-sided at the edges (3rd order when
// only 5 points are available).
CoeffTrack finite_difference_track(const Coefficient& c,
                                   const std::vector<double>& z) {
  const std::size_t n = z.size();
  if (n < 5)
    fail(ErrorCode::InsufficientGrid,
         "finite differences need at least 5 grid points");
  check_uniform(z);
  const double h = z[1] - z[0];
  CoeffTrack t;
  t.val.resize(n);
  t.d1.resize(n);
  t.d2.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.val[i] = c(z[i]);
  const auto& v = t.val;
  const double ih = 1.0 / (12.0 * h);
  const double ih2 = 1.0 / (12.0 * h * h);

  for (std::size_t i = 2; i + 2 < n; ++i) {
    t.d1[i] = (-v[i + 2] + 8 * v[i + 1] - 8 * v[i - 1] + v[i - 2]) * ih;
    t.d2[i] =
        (-v[i + 2] + 16 * v[i + 1] - 30 * v[i] + 16 * v[i - 1] - v[i - 2]) *
        ih2;
  }
  t.d1[0] = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) * ih;
  t.d1[1] = (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]) * ih;
  t.d1[n - 1] = (25 * v[n - 1] - 48 * v[n - 2] + 36 * v[n - 3] -
                 16 * v[n - 4] + 3 * v[n - 5]) *
                ih;
  t.d1[n - 2] =
      (3 * v[n - 1] + 10 * v[n - 2] - 18 * v[n - 3] + 6 * v[n - 4] - v[n - 5]) *
      ih;
  if (n >= 6) {
    t.d2[0] = (45 * v[0] - 154 * v[1] + 214 * v[2] - 156 * v[3] + 61 * v[4] -
               10 * v[5]) *
              ih2;
    t.d2[1] =
        (10 * v[0] - 15 * v[1] - 4 * v[2] + 14 * v[3] - 6 * v[4] + v[5]) * ih2;
    t.d2[n - 1] = (45 * v[n - 1] - 154 * v[n - 2] + 214 * v[n - 3] -
                   156 * v[n - 4] + 61 * v[n - 5] - 10 * v[n - 6]) *
                  ih2;
    t.d2[n - 2] = (10 * v[n - 1] - 15 * v[n - 2] - 4 * v[n - 3] +
                   14 * v[n - 4] - 6 * v[n - 5] + v[n - 6]) *
                  ih2;
  } else {
    t.d2[0] = (35 * v[0] - 104 * v[1] + 114 * v[2] - 56 * v[3] + 11 * v[4]) *
              ih2;
    t.d2[1] = (11 * v[0] - 20 * v[1] + 6 * v[2] + 4 * v[3] - v[4]) * ih2;
    t.d2[n - 1] = (35 * v[n - 1] - 104 * v[n - 2] + 114 * v[n - 3] -
                   56 * v[n - 4] + 11 * v[n - 5]) *
                  ih2;
    t.d2[n - 2] = (11 * v[n - 1] - 20 * v[n - 2] + 6 * v[n - 3] +
                   4 * v[n - 4] - v[n - 5]) *
                  ih2;
  }
  return t;
}

CoeffTrack track(const Coefficient& c, const std::vector<double>& z) {
  if (c.has_closed_form()) {
    CoeffTrack t;
    const std::size_t n = z.size();
    t.val.resize(n);
    t.d1.resize(n);
    t.d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      t.val[i] = c(z[i]);
      t.d1[i] = c.derivative(z[i]);
      t.d2[i] = c.second_derivative(z[i]);
    }
    return t;
  }
  return finite_difference_track(c, z);
}

void check_nonsingular(const CoeffTrack& t, const char* name) {
  double sup = 0.0;
  for (double v : t.val) sup = std::max(sup, std::abs(v));
  const double floor = 1e-12 * std::max(1.0, sup);
  for (double v : t.val)
    if (std::abs(v) < floor)
      fail(ErrorCode::SingularCoefficient,
           std::string(name) + " vanishes on the z grid");
}

}  // namespace

std::vector<double> v2_from_fg(const CoefficientFamily& family,
                               const std::vector<double>& z_grid) {
  if (z_grid.size() < 2)
    fail(ErrorCode::InsufficientGrid, "v2_from_fg: z grid too small");
  for (double z : z_grid)
    if (std::abs(family.h(z)) > 1e-14)
      fail(ErrorCode::Precondition, "v2_from_fg: requires h == 0");
  const CoeffTrack f = track(family.f, z_grid);
  const CoeffTrack g = track(family.g, z_grid);
  check_nonsingular(f, "f");
  check_nonsingular(g, "g");

  std::vector<double> v2(z_grid.size());
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double F = f.val[i], Fz = f.d1[i], Fzz = f.d2[i];
    const double G = g.val[i], Gz = g.d1[i], Gzz = g.d2[i];
    const double num = G * G * F * Fzz - F * F * G * Gzz + 2 * F * F * Gz * Gz -
                       G * G * Fz * Fz - G * F * Gz * Fz;
    v2[i] = num / (4.0 * F * F * F * G * G);
  }
  return v2;
}

std::vector<double> painleve_residual(const CoefficientFamily& family,
                                      const std::vector<double>& z_grid) {
  if (z_grid.size() < 2)
    fail(ErrorCode::InsufficientGrid, "painleve_residual: z grid too small");
  const CoeffTrack f = track(family.f, z_grid);
  const CoeffTrack g = track(family.g, z_grid);
  const CoeffTrack h = track(family.h, z_grid);
  check_nonsingular(f, "f");
  check_nonsingular(g, "g");

  std::vector<double> res(z_grid.size());
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double F = f.val[i], Fz = f.d1[i], Fzz = f.d2[i];
    const double G = g.val[i], Gz = g.d1[i], Gzz = g.d2[i];
    const double H = h.val[i], Hz = h.d1[i];
    const double V2 = family.v2(z_grid[i]);
    res[i] = (4 * F * F * G * Gz - 2 * F * Fz * G * G) * H -
             4 * F * F * G * G * H * H - 2 * F * F * G * G * Hz -
             G * G * F * Fzz + F * F * G * Gzz - 2 * F * F * Gz * Gz +
             Fz * Fz * G * G + Fz * G * F * Gz + 4 * V2 * F * F * F * G * G;
  }
  return res;
}

double gauge_remove_loss(const std::function<double(double)>& h, double z) {
  if (z == 0.0) return 1.0;
  return std::exp(-adaptive_simpson(h, 0.0, z));
}

double gauge_remove_loss(const Coefficient& h, double z) {
  switch (h.kind()) {
    case Coefficient::Kind::Constant:
      return std::exp(-h(0.0) * z);
    case Coefficient::Kind::Exponential: {
      // int_0^z s e^{r t} dt = s (e^{r z} - 1)/r, or s z when r == 0
      const double s = h(0.0);
      const double r = s != 0.0 ? h.derivative(0.0) / s : 0.0;
      const double integral = r == 0.0 ? s * z : s * std::expm1(r * z) / r;
      return std::exp(-integral);
    }
    case Coefficient::Kind::Samples:
      return gauge_remove_loss([&h](double s) { return h(s); }, z);
  }
  return 1.0;
}

}  // namespace nlse
