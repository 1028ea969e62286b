#include "nlse/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "nlse/errors.hpp"

namespace nlse {

Coefficient Coefficient::constant(double value) {
  Coefficient c;
  c.kind_ = Kind::Constant;
  c.value_ = value;
  return c;
}

Coefficient Coefficient::exponential(double scale, double rate) {
  Coefficient c;
  c.kind_ = Kind::Exponential;
  c.scale_ = scale;
  c.rate_ = rate;
  return c;
}

Coefficient Coefficient::samples(std::vector<double> z,
                                 std::vector<double> value) {
  if (z.size() != value.size() || z.size() < 2)
    fail(ErrorCode::InvalidParams, "coefficient samples: need >= 2 rows");
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] > z[i - 1]))
      fail(ErrorCode::InvalidParams,
           "coefficient samples: z must be strictly increasing");
  Coefficient c;
  c.kind_ = Kind::Samples;
  c.zs_ = std::move(z);
  c.vs_ = std::move(value);
  return c;
}

double Coefficient::operator()(double z) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Exponential:
      return scale_ * std::exp(rate_ * z);
    case Kind::Samples: {
      const double tol = 1e-9 * std::max(1.0, std::abs(zs_.back()));
      if (z < zs_.front() - tol || z > zs_.back() + tol)
        fail(ErrorCode::OutOfRange, "coefficient samples: z outside table");
      if (z <= zs_.front()) return vs_.front();
      if (z >= zs_.back()) return vs_.back();
      const auto it = std::upper_bound(zs_.begin(), zs_.end(), z);
      const std::size_t i = static_cast<std::size_t>(it - zs_.begin()) - 1;
      const double w = (z - zs_[i]) / (zs_[i + 1] - zs_[i]);
      return vs_[i] + w * (vs_[i + 1] - vs_[i]);
    }
  }
  return 0.0;
}

double Coefficient::derivative(double z) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Exponential:
      return rate_ * scale_ * std::exp(rate_ * z);
    case Kind::Samples:
      fail(ErrorCode::Precondition,
           "coefficient samples: no closed-form derivative");
  }
  return 0.0;
}

double Coefficient::second_derivative(double z) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Exponential:
      return rate_ * rate_ * scale_ * std::exp(rate_ * z);
    case Kind::Samples:
      fail(ErrorCode::Precondition,
           "coefficient samples: no closed-form derivative");
  }
  return 0.0;
}

}  // namespace nlse
