#include "nlse/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlse/csv.hpp"
#include "nlse/errors.hpp"
#include "nlse/fft.hpp"

namespace nlse {

namespace {

void check_valid(const ComplexField& f) {
  if (!f.grid) fail(ErrorCode::Precondition, "field: missing grid");
  if (f.values.size() != f.grid->n())
    fail(ErrorCode::Precondition, "field: value count does not match grid");
}

}  // namespace

ComplexField make_field(GridPtr grid, double z) {
  if (!grid) fail(ErrorCode::Precondition, "make_field: null grid");
  ComplexField f;
  f.grid = std::move(grid);
  f.values.assign(f.grid->n(), {0.0, 0.0});
  f.z = z;
  return f;
}

ComplexField make_gaussian(GridPtr grid, double amplitude, double width) {
  if (!(width > 0.0))
    fail(ErrorCode::InvalidWidth, "make_gaussian: width must be positive");
  ComplexField f = make_field(std::move(grid));
  const double w2 = 2.0 * width * width;
  for (std::size_t j = 0; j < f.grid->n(); ++j) {
    const double t = f.grid->t(j);
    f.values[j] = amplitude * std::exp(-t * t / w2);
  }
  return f;
}

double l2_norm(const ComplexField& field) {
  check_valid(field);
  double acc = 0.0;
  for (const auto& v : field.values) acc += std::norm(v);
  return std::sqrt(acc * field.grid->dt());
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
  check_valid(a);
  check_valid(b);
  if (!same_grid(*a.grid, *b.grid))
    fail(ErrorCode::Precondition, "l2_distance: grids differ");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j)
    acc += std::norm(a.values[j] - b.values[j]);
  return std::sqrt(acc * a.grid->dt());
}

double linf_norm(const ComplexField& field) {
  check_valid(field);
  double m = 0.0;
  for (const auto& v : field.values) m = std::max(m, std::abs(v));
  return m;
}

ComplexField spectral_derivative(const ComplexField& field) {
  check_valid(field);
  const std::size_t n = field.grid->n();
  Fft fft(n);
  auto coeff = fft.forward(field.values);
  const auto& k = field.grid->wavenumbers();
  for (std::size_t j = 0; j < n; ++j)
    coeff[j] *= std::complex<double>(0.0, k[j]);
  // The Nyquist mode has no well-defined sign for odd derivatives; drop it.
  coeff[n / 2] = 0.0;
  ComplexField out = field;
  fft.inverse(coeff.data(), out.values.data());
  return out;
}

ComplexField spectral_second_derivative(const ComplexField& field) {
  check_valid(field);
  const std::size_t n = field.grid->n();
  Fft fft(n);
  auto coeff = fft.forward(field.values);
  const auto& k = field.grid->wavenumbers();
  for (std::size_t j = 0; j < n; ++j) coeff[j] *= -k[j] * k[j];
  ComplexField out = field;
  fft.inverse(coeff.data(), out.values.data());
  return out;
}

double weighted_norm_t2(const ComplexField& field) {
  check_valid(field);
  double acc = 0.0;
  for (std::size_t j = 0; j < field.values.size(); ++j) {
    const double t = field.grid->centered_t(j);
    const double t2 = t * t;
    acc += t2 * t2 * std::norm(field.values[j]);
  }
  return std::sqrt(acc * field.grid->dt());
}

double weighted_norm_t_ut(const ComplexField& field) {
  const ComplexField d = spectral_derivative(field);
  double acc = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    const double t = d.grid->centered_t(j);
    acc += t * t * std::norm(d.values[j]);
  }
  return std::sqrt(acc * d.grid->dt());
}

bool all_finite(const ComplexField& field) {
  for (const auto& v : field.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void write_field_csv(const std::string& path, const ComplexField& field) {
  check_valid(field);
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  out << "t,re,im\n";
  for (std::size_t j = 0; j < field.values.size(); ++j) {
    out << fmt_g17(field.grid->t(j)) << ',' << fmt_g17(field.values[j].real())
        << ',' << fmt_g17(field.values[j].imag()) << '\n';
  }
  if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

ComplexField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Io, "empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im")
    fail(ErrorCode::Io, "field csv: expected header 't,re,im' in " + path);

  std::vector<double> ts;
  std::vector<std::complex<double>> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      fail(ErrorCode::Io, "field csv: malformed row in " + path);
    ts.push_back(t);
    vals.emplace_back(re, im);
  }
  const std::size_t n = ts.size();
  if (n < 2) fail(ErrorCode::Io, "field csv: too few samples in " + path);
  const double dt = ts[1] - ts[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double expect = ts[0] + static_cast<double>(j) * dt;
    if (std::abs(ts[j] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
      fail(ErrorCode::Io, "field csv: nonuniform t column in " + path);
  }
  ComplexField f;
  f.grid = make_grid(ts[0], ts[0] + dt * static_cast<double>(n), n);
  f.values = std::move(vals);
  f.z = 0.0;
  return f;
}

}  // namespace nlse
