#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nlse/grid.hpp"

namespace nlse {

/// Sampled complex envelope on a Grid at evolution coordinate z.
///
/// Value-like: copies are independent and instances are safe to move across
/// threads. The moment norms (weighted_norm_*) are faithful only for fields
/// that have decayed to ~0 at the box edges; that decay is the caller's
/// responsibility and is what makes the periodic spectral treatment of an
/// unbounded coordinate legitimate.
struct ComplexField {
  GridPtr grid;
  std::vector<std::complex<double>> values;
  double z = 0.0;
};

/// Zero field on a grid.
ComplexField make_field(GridPtr grid, double z = 0.0);

/// values[j] = amplitude * exp(-t_j^2 / (2 width^2)), z = 0.
ComplexField make_gaussian(GridPtr grid, double amplitude, double width);

/// sqrt(sum |values|^2 dt): quadrature approximation of the L2 norm.
double l2_norm(const ComplexField& field);

/// L2 norm of the pointwise difference; grids must match.
double l2_distance(const ComplexField& a, const ComplexField& b);

/// max_j |values[j]|.
double linf_norm(const ComplexField& field);

/// Fourier multiplier i*k (Nyquist mode zeroed). Requires edge decay.
ComplexField spectral_derivative(const ComplexField& field);

/// Fourier multiplier -k^2.
ComplexField spectral_second_derivative(const ComplexField& field);

/// ||t^2 field||_L2: quadrature with weight t^4 on |values|^2, t centered.
double weighted_norm_t2(const ComplexField& field);

/// ||t d/dt field||_L2 via spectral_derivative and t^2-weighted quadrature.
double weighted_norm_t_ut(const ComplexField& field);

bool all_finite(const ComplexField& field);

/// Snapshot file: CSV with header `t,re,im`, one row per sample in grid
/// order. The reader reconstructs the grid from the t column (uniform,
/// power-of-two length) and sets z = 0.
void write_field_csv(const std::string& path, const ComplexField& field);
ComplexField read_field_csv(const std::string& path);

}  // namespace nlse
