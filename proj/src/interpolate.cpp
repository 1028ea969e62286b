#include "nlse/interpolate.hpp"

#include <cmath>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"

namespace nlse {

FieldInterpolant::FieldInterpolant(const ComplexField& field,
                                   InterpMethod method)
    : method_(method),
      n_(field.grid ? field.grid->n() : 0),
      t_min_(field.grid ? field.grid->t_min() : 0.0),
      length_(field.grid ? field.grid->length() : 0.0),
      dt_(field.grid ? field.grid->dt() : 0.0) {
  if (!field.grid || field.values.size() != n_)
    fail(ErrorCode::Precondition, "interpolant: invalid field");

  if (method_ == InterpMethod::Trigonometric) {
    Fft fft(n_);
    coeff_ = fft.forward(field.values);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& c : coeff_) c *= scale;
    return;
  }

  // Natural cubic spline over the n+1 knots t_0..t_n, closed periodically
  // with y_n = y_0.
  y_.assign(field.values.begin(), field.values.end());
  y_.push_back(field.values.front());
  const std::size_t m = n_ + 1;
  y2_.assign(m, {0.0, 0.0});
  std::vector<std::complex<double>> u(m, {0.0, 0.0});
  for (std::size_t i = 1; i + 1 < m; ++i) {
    // uniform spacing: sig = 1/2
    const std::complex<double> p = 0.5 * y2_[i - 1] + 2.0;
    y2_[i] = -0.5 / p;
    const std::complex<double> d =
        (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) * (6.0 / (2.0 * dt_ * dt_));
    u[i] = (d - 0.5 * u[i - 1]) / p;
  }
  for (std::size_t i = m - 1; i-- > 0;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
}

std::complex<double> FieldInterpolant::operator()(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(length_));
  if (t < t_min_ - tol || t > t_min_ + length_ + tol)
    fail(ErrorCode::OutOfRange, "interpolant: point outside box");
  return method_ == InterpMethod::Trigonometric ? eval_trig(t) : eval_spline(t);
}

std::complex<double> FieldInterpolant::eval_trig(double t) const {
  const double x = t - t_min_;
  const double base = 2.0 * M_PI / length_ * x;
  std::complex<double> acc = coeff_[0];
  const std::complex<double> w = std::polar(1.0, base);
  const std::complex<double> wc = std::conj(w);
  std::complex<double> rot_p{1.0, 0.0}, rot_m{1.0, 0.0};
  for (std::size_t m = 1; m < n_ / 2; ++m) {
    // resync the incremental rotation periodically to cap drift
    if ((m & 255u) == 0) {
      rot_p = std::polar(1.0, base * static_cast<double>(m));
      rot_m = std::conj(rot_p);
    } else {
      rot_p *= w;
      rot_m *= wc;
    }
    acc += coeff_[m] * rot_p + coeff_[n_ - m] * rot_m;
  }
  acc += coeff_[n_ / 2] * std::cos(0.5 * base * static_cast<double>(n_));
  return acc;
}

std::complex<double> FieldInterpolant::eval_spline(double t) const {
  double x = t - t_min_;
  if (x < 0.0) x = 0.0;
  if (x > length_) x = length_;
  std::size_t i = static_cast<std::size_t>(x / dt_);
  if (i >= n_) i = n_ - 1;
  const double a = (static_cast<double>(i + 1) * dt_ - x) / dt_;
  const double b = 1.0 - a;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * y2_[i] + (b * b * b - b) * y2_[i + 1]) *
             (dt_ * dt_ / 6.0);
}

}  // namespace nlse
