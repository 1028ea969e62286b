#include "nlse/grid.hpp"

#include <cmath>

#include "nlse/errors.hpp"

namespace nlse {

namespace {
constexpr std::size_t kMinSamples = 16;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(double t_min, double t_max, std::size_t n)
    : t_min_(t_min), t_max_(t_max), n_(n) {
  if (!(t_max > t_min))
    fail(ErrorCode::InvalidDomain, "grid: t_max must exceed t_min");
  if (!is_power_of_two(n) || n < kMinSamples)
    fail(ErrorCode::InvalidSize,
         "grid: sample count must be a power of two and >= 16");
  dt_ = (t_max - t_min) / static_cast<double>(n);

  t_.resize(n);
  centered_.resize(n);
  const double center = 0.5 * (t_min + t_max);
  for (std::size_t j = 0; j < n; ++j) {
    t_[j] = t_min + static_cast<double>(j) * dt_;
    centered_[j] = t_[j] - center;
  }

  wavenumbers_.resize(n);
  const double dk = 2.0 * M_PI / length();
  for (std::size_t j = 0; j < n; ++j) {
    const auto m = (j < n / 2) ? static_cast<double>(j)
                               : static_cast<double>(j) - static_cast<double>(n);
    wavenumbers_[j] = dk * m;
  }
}

double Grid::max_wavenumber() const {
  return M_PI * static_cast<double>(n_) / length();
}

GridPtr make_grid(double t_min, double t_max, std::size_t n) {
  return std::make_shared<const Grid>(t_min, t_max, n);
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.n() == b.n() && a.t_min() == b.t_min() && a.t_max() == b.t_max();
}

}  // namespace nlse
