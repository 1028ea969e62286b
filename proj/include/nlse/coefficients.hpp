#pragma once

#include <string>
#include <vector>

namespace nlse {

/// Scalar coefficient function of the evolution coordinate z.
///
/// Constant and exponential (scale * e^{rate z}) coefficients carry exact
/// derivatives. Sampled tables evaluate by linear interpolation between
/// their nodes; consumers that need derivatives of sampled coefficients take
/// finite differences on their own z-grid, so that grid should coincide with
/// the sample nodes.
class Coefficient {
 public:
  enum class Kind { Constant, Exponential, Samples };

  static Coefficient constant(double value);
  static Coefficient exponential(double scale, double rate);
  static Coefficient samples(std::vector<double> z, std::vector<double> value);

  Kind kind() const { return kind_; }
  bool has_closed_form() const { return kind_ != Kind::Samples; }

  double operator()(double z) const;
  double derivative(double z) const;         // closed-form kinds only
  double second_derivative(double z) const;  // closed-form kinds only

 private:
  Coefficient() = default;
  Kind kind_ = Kind::Constant;
  double value_ = 0.0;  // Constant
  double scale_ = 0.0;  // Exponential
  double rate_ = 0.0;
  std::vector<double> zs_, vs_;  // Samples, zs_ strictly increasing
};

/// Coefficient family i v_z + f v_tt + g |v|^2 v + (v0 + v1 t + v2 t^2) v
/// + i h v = 0. f and g must not vanish where the family is evaluated.
struct CoefficientFamily {
  Coefficient f = Coefficient::constant(1.0);
  Coefficient g = Coefficient::constant(1.0);
  Coefficient h = Coefficient::constant(0.0);
  Coefficient v0 = Coefficient::constant(0.0);
  Coefficient v1 = Coefficient::constant(0.0);
  Coefficient v2 = Coefficient::constant(0.0);
};

}  // namespace nlse
