#pragma once

#include <Eigen/Dense>

#include "optomech/dynamics.hpp"

namespace optomech {

/// Symmetrized intracavity spectrum S(ω) = G(ω) D_s G(ω)†, G = (-iωI - M)^-1.
Eigen::MatrixXcd intracavity_spectrum(const LinearSystem& ls,
                                      const Eigen::MatrixXd& diffusion,
                                      double omega);

struct SpectralIntegral {
  Eigen::MatrixXd covariance;  // ∫ Re S(ω) dω / 2π
  double error_estimate = 0.0;  // absolute, max-entry norm
  int evaluations = 0;
};

/// Integrates the symmetrized intracavity spectrum over the whole real line
/// with globally adaptive 15-point Gauss-Kronrod quadrature after the map
/// ω = s·tan θ (s = κ). The θ axis is split at every resonance of the drift
/// matrix; the interval with the largest Kronrod-Gauss discrepancy is
/// bisected until the summed discrepancy falls below rel_tol·max|P_ij|.
SpectralIntegral integrate_intracavity_spectrum(const LinearSystem& ls,
                                                const NoiseModel& nm,
                                                double rel_tol = 1e-12,
                                                int max_intervals = 20000);

/// max_ij |a_ij - b_ij| / max(|a_ij|, floor·max|a|). The floor keeps
/// entries that vanish by symmetry from dominating through round-off.
double max_entrywise_relative_error(const Eigen::MatrixXd& a,
                                    const Eigen::MatrixXd& b,
                                    double floor = 1e-9);

}  // namespace optomech
