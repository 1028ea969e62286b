#pragma once

#include <cstddef>
#include <vector>

#include "nlse/field.hpp"
#include "nlse/models.hpp"

namespace nlse {

enum class ModelTag {
  Dissipative,  ///< i u_z + u_tt + c1 e^{-c2 z} |u|^2 u = 0
  Integrable,   ///< i v_z + v_tt + c1 e^{-c2 z} |v|^2 v + (c2^2/4) t^2 v = 0
  Cubic,        ///< i Q_Z + Q_TT + rho |Q|^2 Q = 0
};

struct ModelKind {
  ModelTag tag = ModelTag::Cubic;
  DimensionlessParams params;
};

ModelKind dissipative_model(int c1, double c2);
ModelKind integrable_model(int c1, double c2);
ModelKind cubic_model(int rho);

struct SplitStepConfig {
  double dz = 1e-3;
  enum class Scheme { Strang } scheme = Scheme::Strang;
  std::size_t snapshot_every = 1;
};

struct Observables {
  double l2 = 0.0;
  double t2_moment = 0.0;    // ||t^2 field||
  double t_ut_moment = 0.0;  // ||t d/dt field||
};

struct Trajectory {
  ModelKind model;
  std::vector<double> z_values;  // strictly increasing from 0
  std::vector<ComplexField> snapshots;
  std::vector<Observables> observables;
};

/// One Strang step z -> z + dz (dz may be negative, which runs the exact
/// reverse). Composition: half nonlinear(+potential), full linear, half
/// nonlinear. Every substep is exact for its own flow:
///   linear      u_k -> e^{-i k^2 dz} u_k  (Fourier multiplier)
///   cubic       u   -> u e^{i c1 |u|^2 w},  w = int e^{-c2 s} ds over the
///               substep, evaluated as e^{-c2 z}(-expm1(-c2 d))/c2 so the
///               c2 -> 0 limit w -> d is reached without cancellation
///               (plain e^{i rho |u|^2 d} for the cubic model)
///   potential   u -> u e^{i (c2^2/4) t^2 d}  (integrable model only)
/// |u| is unchanged by the pointwise substeps, so the z-dependent cubic
/// coefficient integrates exactly.
/// Throws StepInstability if the post-step mass grows more than 10% or any
/// amplitude exceeds 1e6 (blow-up / too-large dz guards).
ComplexField step(const ModelKind& model, const ComplexField& field, double dz);

/// Repeated stepping from initial.z == 0 to z_end >= 0, recording snapshots
/// and observables every snapshot_every steps and at z_end (a final partial
/// step is permitted). Warns once on stderr when dz * k_max^2 >= pi.
Trajectory evolve(const ModelKind& model, const ComplexField& initial,
                  double z_end, const SplitStepConfig& config);

/// Like evolve but lands snapshots exactly on the given increasing targets
/// (each segment is covered with uniform substeps of size <= dz_max).
Trajectory evolve_to(const ModelKind& model, const ComplexField& initial,
                     const std::vector<double>& z_targets, double dz_max);

/// Grid-max of |i dF/dz + d^2F/dt^2 + (nonlinear + potential) F| at an
/// interior snapshot, with dF/dz by centered differences in z (snapshots must
/// be equally spaced around index) and the t-derivative spectral. Small
/// values certify that the trajectory solves its model.
double residual(const ModelKind& model, const Trajectory& traj,
                std::size_t index);

}  // namespace nlse
