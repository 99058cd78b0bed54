#include "optomech/lyapunov.hpp"

#include <complex>
#include <stdexcept>
#include <limits>

#include "optomech/errors.hpp"

namespace optomech {

using cd = std::complex<double>;

Eigen::MatrixXd solve_continuous_lyapunov(const Eigen::MatrixXd& a,
                                          const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || q.rows() != n || q.cols() != n) {
    throw std::invalid_argument("Lyapunov: A and Q must be square, same size");
  }
  if (n == 0) return Eigen::MatrixXd(0, 0);

  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.cast<cd>());
  if (schur.info() != Eigen::Success) {
    throw EigenSolverFailure("Lyapunov: Schur factorization failed");
  }
  const Eigen::MatrixXcd& u = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();

  // T Y + Y T^H = C with Y = U^H X U, C = -U^H Q U. Column j of Y T^H is
  // conj(T_jj) y_j + Σ_{k>j} conj(T_jk) y_k, so sweep j downwards.
  const Eigen::MatrixXcd c = -(u.adjoint() * q.cast<cd>() * u);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  const double scale = t.cwiseAbs().maxCoeff();
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() *
                      (scale > 0.0 ? scale : 1.0);

  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      rhs -= std::conj(t(j, k)) * y.col(k);
    }
    Eigen::MatrixXcd shifted = t;
    shifted.diagonal().array() += std::conj(t(j, j));
    if ((shifted.diagonal().cwiseAbs().array() <= tiny).any()) {
      throw SingularLyapunov(
          "Lyapunov equation has no unique solution (eigenvalues sum to 0)");
    }
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }

  const Eigen::MatrixXd x = (u * y * u.adjoint()).real();
  return 0.5 * (x + x.transpose());
}

Eigen::MatrixXd symmetrized_diffusion(const LinearSystem& ls,
                                      const NoiseModel& nm) {
  const auto f = ls.input_gain.asDiagonal();
  return f * nm.spectral.real() * f;
}

LyapunovSolution lyapunov_covariance(const LinearSystem& ls,
                                     const NoiseModel& nm) {
  if (!check_stability(ls).stable) {
    throw UnstableSystem("Lyapunov covariance requested for an unstable "
                         "drift matrix");
  }
  const Eigen::MatrixXd ds = symmetrized_diffusion(ls, nm);
  LyapunovSolution sol;
  sol.covariance = solve_continuous_lyapunov(ls.drift, ds);
  sol.residual = (ls.drift * sol.covariance +
                  sol.covariance * ls.drift.transpose() + ds)
                     .cwiseAbs()
                     .maxCoeff();
  return sol;
}

}  // namespace optomech
