#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/field.hpp"
#include "oracles.hpp"

using namespace nlse;

namespace {

GridPtr standard_grid() { return make_grid(-20.0, 20.0, 2048); }

ComplexField unit_gaussian() { return make_gaussian(standard_grid(), 1.0, 1.0); }

}  // namespace

TEST_CASE("make_grid basic arithmetic") {
  const auto g = make_grid(-10.0, 10.0, 16);
  CHECK(g->n() == 16);
  CHECK(g->dt() == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(g->t(0) == doctest::Approx(-10.0));
  CHECK(g->t(15) == doctest::Approx(-10.0 + 15 * 1.25));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_WITH_AS(make_grid(-10.0, 10.0, 15), doctest::Contains("power of two"),
                       Error);
  CHECK_THROWS_AS(make_grid(0.0, 0.0, 16), Error);
  CHECK_THROWS_AS(make_grid(1.0, -1.0, 16), Error);
  CHECK_THROWS_AS(make_grid(-1.0, 1.0, 8), Error);
  try {
    make_grid(-10.0, 10.0, 15);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSize);
  }
  try {
    make_grid(0.0, 0.0, 16);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDomain);
  }
}

TEST_CASE("wavenumbers: zero first, symmetric up to Nyquist") {
  const auto g = make_grid(-10.0, 10.0, 64);
  const auto& k = g->wavenumbers();
  CHECK(k[0] == 0.0);
  for (std::size_t m = 1; m < 32; ++m)
    CHECK(k[m] == doctest::Approx(-k[64 - m]).epsilon(1e-15));
  CHECK(k[32] == doctest::Approx(-g->max_wavenumber()));
  const double dk = 2.0 * M_PI / g->length();
  CHECK(k[1] == doctest::Approx(dk).epsilon(1e-15));
}

TEST_CASE("l2_norm: zero field and Gaussian against quadrature oracle") {
  CHECK(l2_norm(make_field(standard_grid())) == 0.0);

  // oracle: high-resolution Simpson for (int e^{-t^2} dt)^{1/2}
  const double ref = std::sqrt(oracle::composite_simpson(
      [](double t) { return std::exp(-t * t); }, -20.0, 20.0, 200000));
  CHECK(ref == doctest::Approx(oracle::kGaussianL2).epsilon(1e-12));

  CHECK(std::abs(l2_norm(unit_gaussian()) - oracle::kGaussianL2) < 1e-8);
}

TEST_CASE("l2_norm is positive definite") {
  const auto g = make_grid(-15.0, 15.0, 256);
  for (unsigned seed : {21u, 22u, 23u}) {
    ComplexField f = make_field(g);
    f.values = oracle::random_envelope_values(g->times(), seed);
    CHECK(l2_norm(f) > 0.0);
  }
  ComplexField tiny = make_field(g);
  tiny.values[g->n() / 2] = {0.0, 1e-30};
  CHECK(l2_norm(tiny) > 0.0);
  CHECK(l2_norm(make_field(g)) == 0.0);
}

TEST_CASE("l2_norm is invariant under a global phase") {
  ComplexField f = unit_gaussian();
  const double base = l2_norm(f);
  for (auto& v : f.values) v *= std::polar(1.0, 1.234);
  CHECK(l2_norm(f) == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("spectral_derivative: constant, plane wave, Gaussian") {
  const auto g = standard_grid();
  ComplexField constant = make_field(g);
  for (auto& v : constant.values) v = {3.0, -1.0};
  const ComplexField dc = spectral_derivative(constant);
  CHECK(linf_norm(dc) < 1e-12);

  // plane wave with a grid wavenumber is an eigenfunction of the multiplier
  const double k0 = g->wavenumbers()[5];
  ComplexField wave = make_field(g);
  for (std::size_t j = 0; j < g->n(); ++j)
    wave.values[j] = std::polar(1.0, k0 * g->t(j));
  const ComplexField dw = spectral_derivative(wave);
  double worst = 0.0;
  for (std::size_t j = 0; j < g->n(); ++j)
    worst = std::max(worst, std::abs(dw.values[j] -
                                     std::complex<double>(0.0, k0) *
                                         wave.values[j]));
  CHECK(worst < 1e-10);

  // d/dt e^{-t^2/2} = -t e^{-t^2/2}
  const ComplexField dg = spectral_derivative(unit_gaussian());
  worst = 0.0;
  for (std::size_t j = 0; j < g->n(); ++j) {
    const double t = g->t(j);
    worst = std::max(worst, std::abs(dg.values[j] + t * std::exp(-t * t / 2)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("weighted_norm_t2 against the t^4 moment oracle") {
  CHECK(weighted_norm_t2(make_field(standard_grid())) == 0.0);

  const double ref = std::sqrt(oracle::composite_simpson(
      [](double t) { return t * t * t * t * std::exp(-t * t); }, -20.0, 20.0,
      200000));
  CHECK(ref == doctest::Approx(oracle::kGaussianT2).epsilon(1e-12));

  CHECK(std::abs(weighted_norm_t2(unit_gaussian()) - oracle::kGaussianT2) <
        1e-7);

  // field supported only at the t = 0 sample has zero weight
  const auto g = make_grid(-10.0, 10.0, 64);
  ComplexField spike = make_field(g);
  spike.values[32] = 42.0;  // t = 0 sits at index n/2 of a symmetric box
  CHECK(g->t(32) == doctest::Approx(0.0));
  CHECK(weighted_norm_t2(spike) == 0.0);
}

TEST_CASE("weighted_norm_t_ut: constant field and Gaussian") {
  const auto g = standard_grid();
  ComplexField constant = make_field(g);
  for (auto& v : constant.values) v = 2.0;
  CHECK(weighted_norm_t_ut(constant) < 1e-10);

  // t d/dt e^{-t^2/2} = -t^2 e^{-t^2/2}, same moment as above
  CHECK(std::abs(weighted_norm_t_ut(unit_gaussian()) - oracle::kGaussianT2) <
        1e-7);
}

TEST_CASE("moment norms are homogeneous of degree one") {
  ComplexField f = unit_gaussian();
  const double t2 = weighted_norm_t2(f);
  const double tut = weighted_norm_t_ut(f);
  for (auto& v : f.values) v *= 3.5;
  CHECK(weighted_norm_t2(f) == doctest::Approx(3.5 * t2).epsilon(1e-12));
  CHECK(weighted_norm_t_ut(f) == doctest::Approx(3.5 * tut).epsilon(1e-12));
}

TEST_CASE("make_gaussian: zero amplitude and unit norms") {
  const auto g = standard_grid();
  CHECK(l2_norm(make_gaussian(g, 0.0, 1.0)) == 0.0);
  CHECK(std::abs(l2_norm(make_gaussian(g, 1.0, 1.0)) - oracle::kGaussianL2) <
        1e-8);
  CHECK_THROWS_AS(make_gaussian(g, 1.0, 0.0), Error);
  CHECK_THROWS_AS(make_gaussian(g, 1.0, -2.0), Error);
}

TEST_CASE("Parseval identity holds for random fields") {
  const auto g = make_grid(-15.0, 15.0, 256);
  for (unsigned seed : {1u, 2u, 3u}) {
    ComplexField f = make_field(g);
    f.values = oracle::random_envelope_values(g->times(), seed);
    double phys = 0.0;
    for (const auto& v : f.values) phys += std::norm(v);
    phys *= g->dt();

    Fft fft(g->n());
    const auto coeff = fft.forward(f.values);
    double spec = 0.0;
    for (const auto& c : coeff) spec += std::norm(c);
    spec *= g->dt() / static_cast<double>(g->n());
    CHECK(std::abs(phys - spec) <= 1e-10 * phys);
  }
}

TEST_CASE("spectral_derivative is linear") {
  const auto g = make_grid(-15.0, 15.0, 256);
  ComplexField f = make_field(g), h = make_field(g);
  f.values = oracle::random_envelope_values(g->times(), 7);
  h.values = oracle::random_envelope_values(g->times(), 8);
  const std::complex<double> a{0.7, -0.3}, b{-1.1, 0.9};

  ComplexField combo = make_field(g);
  for (std::size_t j = 0; j < g->n(); ++j)
    combo.values[j] = a * f.values[j] + b * h.values[j];

  const ComplexField lhs = spectral_derivative(combo);
  const ComplexField df = spectral_derivative(f);
  const ComplexField dh = spectral_derivative(h);
  double scale = std::max(linf_norm(df), linf_norm(dh));
  for (std::size_t j = 0; j < g->n(); ++j) {
    const auto rhs = a * df.values[j] + b * dh.values[j];
    CHECK(std::abs(lhs.values[j] - rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("field CSV round trip") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "nlse_field_csv_test";
  fs::create_directories(dir);
  const std::string path = (dir / "field.csv").string();

  ComplexField f = make_field(make_grid(-12.0, 12.0, 64));
  f.values = oracle::random_envelope_values(f.grid->times(), 11);
  write_field_csv(path, f);

  const ComplexField back = read_field_csv(path);
  REQUIRE(back.values.size() == f.values.size());
  CHECK(same_grid(*back.grid, *f.grid));
  for (std::size_t j = 0; j < f.values.size(); ++j)
    CHECK(std::abs(back.values[j] - f.values[j]) < 1e-15);
  fs::remove_all(dir);
}
