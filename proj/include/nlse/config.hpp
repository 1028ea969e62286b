#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlse/bounds.hpp"
#include "nlse/coefficients.hpp"
#include "nlse/interpolate.hpp"
#include "nlse/solver.hpp"

namespace nlse {

struct GridSpec {
  double t_min = -20.0;
  double t_max = 20.0;
  std::size_t n = 1024;
};

struct SolverSpec {
  double dz = 1e-3;
  double z_end = 1.0;
  std::size_t snapshot_every = 50;
};

struct InitialSpec {
  enum class Kind { Gaussian, Soliton, File };
  Kind kind = Kind::Gaussian;
  double amplitude = 1.0;  // gaussian
  double width = 1.0;      // gaussian
  double a = 1.0;          // soliton
  std::string path;        // file
};

struct BoundSpec {
  double epsilon = 0.1;
  double delta = 0.05;     // seed value in auto mode
  bool auto_delta = false; // "delta": "auto" calibrates delta from the bounds
  CoefficientVariant variant = CoefficientVariant::Squared;
};

struct OutputSpec {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
  bool svg = true;
};

struct ModelSpec {
  std::optional<ModelTag> kind;  // required by `simulate` only
  int c1 = 1;
  double c2 = 1.0;
  int rho = 1;
};

struct ZGridSpec {
  double z_min = 0.0;
  double z_max = 2.0;
  std::size_t count = 256;
};

struct FamilySpec {
  Coefficient f = Coefficient::constant(1.0);
  Coefficient g = Coefficient::constant(1.0);
  Coefficient h = Coefficient::constant(0.0);
  std::optional<Coefficient> v2;  // computed from (f, g) when absent
  double tolerance = 1e-8;
};

/// Parsed and validated experiment configuration. Parsing is strict: every
/// unknown key and every out-of-range value is rejected with a field-path
/// diagnostic before any computation starts.
struct ExperimentConfig {
  ModelSpec model;
  GridSpec grid;
  SolverSpec solver;
  InitialSpec initial;
  BoundSpec bounds;
  OutputSpec output;
  InterpMethod interp = InterpMethod::Trigonometric;
  std::optional<FamilySpec> family;  // painleve-check
  ZGridSpec z_grid;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace nlse
