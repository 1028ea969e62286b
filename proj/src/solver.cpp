#include "nlse/solver.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"

namespace nlse {

namespace {

constexpr double kMassGrowthGuard = 1.21;  // (1.1)^2 on the squared norm
constexpr double kAmplitudeGuard = 1e6;

void validate_model(const ModelKind& m) {
  if (m.tag == ModelTag::Cubic) {
    if (m.params.rho != 1 && m.params.rho != -1)
      fail(ErrorCode::InvalidParams, "cubic model: rho must be +1 or -1");
  } else {
    validate(m.params);
  }
}

/// Reusable split-step state for one trajectory (FFT plan + phase tables).
class StrangStepper {
 public:
  StrangStepper(const ModelKind& model, const GridPtr& grid)
      : model_(model), grid_(grid), fft_(grid->n()), spec_(grid->n()) {
    validate_model(model);
    const auto& k = grid->wavenumbers();
    k2_.resize(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) k2_[j] = k[j] * k[j];
    if (model.tag == ModelTag::Integrable) {
      const double q = model.params.c2 * model.params.c2 / 4.0;
      pot_.resize(grid->n());
      for (std::size_t j = 0; j < grid->n(); ++j) {
        const double t = grid->t(j);
        pot_[j] = q * t * t;
      }
    }
  }

  void advance(ComplexField& f, double dz) const {
    const double mass_before = squared_sum(f);
    nonlinear_half(f, f.z, 0.5 * dz);
    linear_full(f, dz);
    nonlinear_half(f, f.z + 0.5 * dz, 0.5 * dz);
    f.z += dz;
    const double mass_after = squared_sum(f);
    if (!(mass_after <= kMassGrowthGuard * mass_before) && mass_before > 0.0)
      instability(f.z, "mass grew by more than 10% in one step");
    if (!std::isfinite(mass_after))
      instability(f.z, "non-finite values after step");
    for (const auto& v : f.values)
      if (std::abs(v) > kAmplitudeGuard)
        instability(f.z, "amplitude guard exceeded");
  }

 private:
  [[noreturn]] static void instability(double z, const char* what) {
    std::ostringstream os;
    os << "step instability at z = " << z << ": " << what;
    fail(ErrorCode::StepInstability, os.str());
  }

  static double squared_sum(const ComplexField& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return acc;
  }

  // Exact weight int_z^{z+d} e^{-c2 s} ds, stable for any c2*d.
  static double coeff_weight(double z, double d, double c2) {
    if (c2 == 0.0) return d;
    return std::exp(-c2 * z) * (-std::expm1(-c2 * d)) / c2;
  }

  void nonlinear_half(ComplexField& f, double z0, double d) const {
    if (model_.tag == ModelTag::Cubic) {
      const double rho = static_cast<double>(model_.params.rho);
      for (auto& v : f.values) v *= std::polar(1.0, rho * std::norm(v) * d);
      return;
    }
    const double c1 = static_cast<double>(model_.params.c1);
    const double w = coeff_weight(z0, d, model_.params.c2);
    if (model_.tag == ModelTag::Integrable) {
      for (std::size_t j = 0; j < f.values.size(); ++j)
        f.values[j] *= std::polar(
            1.0, c1 * std::norm(f.values[j]) * w + pot_[j] * d);
    } else {
      for (auto& v : f.values) v *= std::polar(1.0, c1 * std::norm(v) * w);
    }
  }

  void linear_full(ComplexField& f, double dz) const {
    fft_.forward(f.values.data(), spec_.data());
    for (std::size_t j = 0; j < spec_.size(); ++j)
      spec_[j] *= std::polar(1.0, -k2_[j] * dz);
    fft_.inverse(spec_.data(), f.values.data());
  }

  ModelKind model_;
  GridPtr grid_;
  Fft fft_;
  mutable std::vector<std::complex<double>> spec_;
  std::vector<double> k2_;
  std::vector<double> pot_;
};

Observables measure(const ComplexField& f) {
  Observables o;
  o.l2 = l2_norm(f);
  o.t2_moment = weighted_norm_t2(f);
  o.t_ut_moment = weighted_norm_t_ut(f);
  return o;
}

void record(Trajectory& traj, const ComplexField& f) {
  traj.z_values.push_back(f.z);
  traj.snapshots.push_back(f);
  traj.observables.push_back(measure(f));
}

void warn_if_coarse(const Grid& grid, double dz) {
  const double kmax = grid.max_wavenumber();
  if (dz * kmax * kmax >= M_PI)
    std::cerr << "[nlse] note: dz * k_max^2 = " << dz * kmax * kmax
              << " >= pi; linear phases wrap within one step\n";
}

}  // namespace

ModelKind dissipative_model(int c1, double c2) {
  ModelKind m{ModelTag::Dissipative, {c1, c2, c1}};
  validate_model(m);
  return m;
}

ModelKind integrable_model(int c1, double c2) {
  ModelKind m{ModelTag::Integrable, {c1, c2, c1}};
  validate_model(m);
  return m;
}

ModelKind cubic_model(int rho) {
  ModelKind m{ModelTag::Cubic, {rho, 1.0, rho}};
  validate_model(m);
  return m;
}

ComplexField step(const ModelKind& model, const ComplexField& field,
                  double dz) {
  if (dz == 0.0) fail(ErrorCode::Precondition, "step: dz must be nonzero");
  StrangStepper stepper(model, field.grid);
  ComplexField out = field;
  stepper.advance(out, dz);
  return out;
}

Trajectory evolve(const ModelKind& model, const ComplexField& initial,
                  double z_end, const SplitStepConfig& config) {
  if (initial.z != 0.0)
    fail(ErrorCode::Precondition, "evolve: initial.z must be 0");
  if (z_end < 0.0) fail(ErrorCode::Precondition, "evolve: z_end must be >= 0");
  if (!(config.dz > 0.0))
    fail(ErrorCode::Precondition, "evolve: dz must be > 0");
  if (config.snapshot_every == 0)
    fail(ErrorCode::Precondition, "evolve: snapshot_every must be >= 1");

  Trajectory traj;
  traj.model = model;
  record(traj, initial);
  if (z_end == 0.0) return traj;

  warn_if_coarse(*initial.grid, config.dz);
  StrangStepper stepper(model, initial.grid);
  ComplexField f = initial;

  const double full = std::floor(z_end / config.dz + 1e-12);
  const auto n_full = static_cast<std::size_t>(full);
  const double remainder = z_end - full * config.dz;

  for (std::size_t s = 1; s <= n_full; ++s) {
    stepper.advance(f, config.dz);
    f.z = static_cast<double>(s) * config.dz;  // avoid accumulation drift
    const bool last = s == n_full && remainder <= 1e-12 * std::max(1.0, z_end);
    if (s % config.snapshot_every == 0 || last) {
      if (last) f.z = z_end;
      record(traj, f);
    }
  }
  if (remainder > 1e-12 * std::max(1.0, z_end)) {
    stepper.advance(f, remainder);
    f.z = z_end;
    record(traj, f);
  }
  return traj;
}

Trajectory evolve_to(const ModelKind& model, const ComplexField& initial,
                     const std::vector<double>& z_targets, double dz_max) {
  if (initial.z != 0.0)
    fail(ErrorCode::Precondition, "evolve_to: initial.z must be 0");
  if (!(dz_max > 0.0))
    fail(ErrorCode::Precondition, "evolve_to: dz_max must be > 0");
  if (z_targets.empty())
    fail(ErrorCode::Precondition, "evolve_to: no targets");

  Trajectory traj;
  traj.model = model;
  record(traj, initial);

  StrangStepper stepper(model, initial.grid);
  ComplexField f = initial;
  double prev = 0.0;
  for (double target : z_targets) {
    if (target < prev)
      fail(ErrorCode::Precondition, "evolve_to: targets must be increasing");
    const double seg = target - prev;
    if (seg <= 1e-14 * std::max(1.0, target)) {
      if (target > 0.0 && prev > 0.0) continue;  // duplicate target
      if (target == 0.0) continue;               // initial already recorded
    }
    const auto m = static_cast<std::size_t>(
        std::max(1.0, std::ceil(seg / dz_max - 1e-12)));
    const double h = seg / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) stepper.advance(f, h);
    f.z = target;
    record(traj, f);
    prev = target;
  }
  return traj;
}

double residual(const ModelKind& model, const Trajectory& traj,
                std::size_t index) {
  validate_model(model);
  if (traj.snapshots.empty())
    fail(ErrorCode::EmptyTrajectory, "residual: empty trajectory");
  if (index == 0 || index + 1 >= traj.snapshots.size())
    fail(ErrorCode::BoundaryIndex, "residual: index needs both neighbors");
  const double dz_l = traj.z_values[index] - traj.z_values[index - 1];
  const double dz_r = traj.z_values[index + 1] - traj.z_values[index];
  if (std::abs(dz_l - dz_r) > 1e-9 * std::max(dz_l, dz_r))
    fail(ErrorCode::Precondition, "residual: snapshots not equally spaced");

  const ComplexField& prev = traj.snapshots[index - 1];
  const ComplexField& cur = traj.snapshots[index];
  const ComplexField& next = traj.snapshots[index + 1];
  const ComplexField lap = spectral_second_derivative(cur);

  const double z = traj.z_values[index];
  const double c1 = static_cast<double>(model.params.c1);
  const double c2 = model.params.c2;
  const double rho = static_cast<double>(model.params.rho);
  const double inv2dz = 1.0 / (dz_l + dz_r);

  double worst = 0.0;
  for (std::size_t j = 0; j < cur.values.size(); ++j) {
    const std::complex<double> dudz =
        (next.values[j] - prev.values[j]) * inv2dz;
    double coeff = 0.0;
    switch (model.tag) {
      case ModelTag::Dissipative:
        coeff = c1 * std::exp(-c2 * z) * std::norm(cur.values[j]);
        break;
      case ModelTag::Integrable: {
        const double t = cur.grid->t(j);
        coeff = c1 * std::exp(-c2 * z) * std::norm(cur.values[j]) +
                c2 * c2 / 4.0 * t * t;
        break;
      }
      case ModelTag::Cubic:
        coeff = rho * std::norm(cur.values[j]);
        break;
    }
    const std::complex<double> r = std::complex<double>(0.0, 1.0) * dudz +
                                   lap.values[j] + coeff * cur.values[j];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace nlse
