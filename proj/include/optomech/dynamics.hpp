#pragma once

#include <Eigen/Dense>

#include "optomech/modes.hpp"
#include "optomech/params.hpp"
#include "optomech/working_point.hpp"

namespace optomech {

/// How the mirror's Y row weighs the optical quadratures: with each mode's
/// own coupling (linearized radiation pressure) or with g0 for every mode.
enum class MirrorCoupling { per_mode, uniform_g0 };

/// du/dt = drift·u + diag(input_gain)·n for the quadrature vector u laid out
/// by `index`.
struct LinearSystem {
  Eigen::MatrixXd drift;
  Eigen::VectorXd input_gain;  // sqrt(2κ) on optical rows, sqrt(2γ_m) on mirror rows
  ModeIndex index;
  double cavity_decay = 0.0;
  double mech_damping = 0.0;
};

LinearSystem build_linear_system(const WorkingPoint& wp, const DerivedParams& d,
                                 const PhysicalParams& p,
                                 MirrorCoupling coupling = MirrorCoupling::per_mode);

/// Input noise spectral matrix <n(ω) n†(ω')> = 2π D δ(ω - ω') in the
/// quadrature basis, in the operator ordering of the input correlators
/// (not symmetrized): optical blocks [[1/2, i/2], [-i/2, 1/2]], mirror block
/// [[N+1/2, i/2], [-i/2, N+1/2]].
struct NoiseModel {
  Eigen::MatrixXcd spectral;
};

NoiseModel build_noise_model(const DerivedParams& d, std::size_t n_modes);

struct StabilityReport {
  bool stable = false;
  double max_real_eig = 0.0;
  double margin = 0.0;  // eigenvalues must satisfy Re λ < -margin
  Eigen::VectorXcd eigenvalues;
};

/// Stable iff every drift eigenvalue has Re λ < -1e-9 κ.
StabilityReport check_stability(const LinearSystem& ls);

}  // namespace optomech
