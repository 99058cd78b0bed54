#pragma once

#include <Eigen/Dense>

#include "optomech/dynamics.hpp"

namespace optomech {

/// Solves A X + X Aᵀ + Q = 0 for real A and symmetric Q by a complex Schur
/// factorization of A and a column sweep over the triangular Sylvester
/// equation. Throws SingularLyapunov when λ_i(A) + conj(λ_j(A)) vanishes.
Eigen::MatrixXd solve_continuous_lyapunov(const Eigen::MatrixXd& a,
                                          const Eigen::MatrixXd& q);

/// Symmetrized diffusion D_s = F Re(D) F of the fluctuation system.
Eigen::MatrixXd symmetrized_diffusion(const LinearSystem& ls,
                                      const NoiseModel& nm);

/// Steady-state symmetrized covariance P_ij = <{u_i, u_j}>/2.
struct LyapunovSolution {
  Eigen::MatrixXd covariance;
  double residual = 0.0;  // max |M P + P Mᵀ + D_s|
};

/// Throws UnstableSystem unless check_stability(ls) passes.
LyapunovSolution lyapunov_covariance(const LinearSystem& ls,
                                     const NoiseModel& nm);

}  // namespace optomech
