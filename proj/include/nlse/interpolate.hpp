#pragma once

#include <complex>
#include <vector>

#include "nlse/field.hpp"

namespace nlse {

enum class InterpMethod {
  Trigonometric,  ///< exact Fourier-sum evaluation, O(n) per point
  CubicSpline,    ///< natural cubic spline fallback, O(log n) per point
};

/// Evaluates a periodic sampled field at arbitrary points inside its box.
///
/// The trigonometric interpolant is the band-limited Fourier sum of the
/// samples (Nyquist mode taken as a cosine); it reproduces the samples
/// exactly and converges spectrally for smooth decaying fields. The spline
/// variant trades accuracy for speed.
class FieldInterpolant {
 public:
  explicit FieldInterpolant(const ComplexField& field,
                            InterpMethod method = InterpMethod::Trigonometric);

  /// Point must lie in [t_min, t_max] (periodically closed).
  std::complex<double> operator()(double t) const;

  InterpMethod method() const { return method_; }

 private:
  std::complex<double> eval_trig(double t) const;
  std::complex<double> eval_spline(double t) const;

  InterpMethod method_;
  std::size_t n_;
  double t_min_, length_, dt_;

  // trig: DFT coefficients scaled by 1/n
  std::vector<std::complex<double>> coeff_;

  // spline: knot values with periodic closure plus second derivatives
  std::vector<std::complex<double>> y_, y2_;
};

}  // namespace nlse
