#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace nlse {

/// Uniform periodic discretization of [t_min, t_max) with its Fourier dual.
///
/// Sample j sits at t_min + j*dt. Wavenumbers follow FFT ordering
/// (0, 1, ..., n/2-1, -n/2, ..., -1) scaled by 2*pi/length, so
/// wavenumbers()[0] == 0 and the set is symmetric up to the single Nyquist
/// mode. The sample count must be a power of two and at least 16.
///
/// Moment weights (centered_t) use the signed coordinate relative to the box
/// center; for a symmetric box this is the coordinate itself.
class Grid {
 public:
  Grid(double t_min, double t_max, std::size_t n);

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double dt() const { return dt_; }
  double length() const { return t_max_ - t_min_; }
  std::size_t n() const { return n_; }

  double t(std::size_t j) const { return t_[j]; }
  double centered_t(std::size_t j) const { return centered_[j]; }

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& wavenumbers() const { return wavenumbers_; }
  double max_wavenumber() const;  // pi * n / length

 private:
  double t_min_, t_max_, dt_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<double> centered_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double t_min, double t_max, std::size_t n);

bool same_grid(const Grid& a, const Grid& b);

}  // namespace nlse
