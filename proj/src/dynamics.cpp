#include "optomech/dynamics.hpp"

#include <cmath>

#include "optomech/errors.hpp"

namespace optomech {

LinearSystem build_linear_system(const WorkingPoint& wp, const DerivedParams& d,
                                 const PhysicalParams& p,
                                 MirrorCoupling coupling) {
  const std::size_t n = p.probe_count();
  const ModeIndex index(n);
  const auto dim = static_cast<Eigen::Index>(index.dimension());
  const double kappa = p.cavity_decay;
  const double gm = p.mech_damping;
  const double wm = p.mech_freq;

  LinearSystem ls;
  ls.index = index;
  ls.cavity_decay = kappa;
  ls.mech_damping = gm;
  ls.drift = Eigen::MatrixXd::Zero(dim, dim);
  ls.input_gain = Eigen::VectorXd::Constant(dim, std::sqrt(2.0 * kappa));
  ls.input_gain.tail(2).setConstant(std::sqrt(2.0 * gm));

  Eigen::MatrixXd& M = ls.drift;
  const auto xb = static_cast<Eigen::Index>(index.x(Mode::mirror()));
  const auto yb = xb + 1;

  // One optical mode with complex amplitude `alpha`, detuning `det` and
  // coupling `g` (the mirror row uses `g_mirror`).
  const auto add_optical = [&](Mode m, double det, std::complex<double> alpha,
                               double g, double g_mirror) {
    const auto x = static_cast<Eigen::Index>(index.x(m));
    const auto y = x + 1;
    M(x, x) = -kappa;
    M(x, y) = det;
    M(y, y) = -kappa;
    M(y, x) = -det;
    M(x, xb) = -2.0 * g * alpha.imag();
    M(y, xb) = 2.0 * g * alpha.real();
    M(yb, x) = 2.0 * g_mirror * alpha.real();
    M(yb, y) = 2.0 * g_mirror * alpha.imag();
  };

  const auto mirror_g = [&](double g) {
    return coupling == MirrorCoupling::per_mode ? g : d.g0;
  };

  add_optical(Mode::pump_minus(), wp.delta_eff, wp.alpha_0minus, d.g0, d.g0);
  add_optical(Mode::pump_plus(), wp.delta_eff - p.pump_separation,
              wp.alpha_0plus, d.g0, d.g0);
  for (std::size_t j = 0; j < n; ++j) {
    add_optical(Mode::probe_mode(j + 1), wp.probe_eff_detunings[j],
                wp.alpha_probe[j], d.g_probe[j], mirror_g(d.g_probe[j]));
  }

  M(xb, xb) = -gm;
  M(xb, yb) = wm;
  M(yb, xb) = -wm;
  M(yb, yb) = -gm;
  return ls;
}

NoiseModel build_noise_model(const DerivedParams& d, std::size_t n_modes) {
  using cd = std::complex<double>;
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  NoiseModel nm;
  nm.spectral = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    const bool mirror = k == dim - 2;
    const double diag = mirror ? d.n_thermal + 0.5 : 0.5;
    nm.spectral(k, k) = diag;
    nm.spectral(k + 1, k + 1) = diag;
    nm.spectral(k, k + 1) = cd(0.0, 0.5);
    nm.spectral(k + 1, k) = cd(0.0, -0.5);
  }
  return nm;
}

StabilityReport check_stability(const LinearSystem& ls) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(ls.drift, false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverFailure("drift matrix eigenvalue computation failed");
  }
  StabilityReport r;
  r.eigenvalues = solver.eigenvalues();
  r.max_real_eig = r.eigenvalues.real().maxCoeff();
  r.margin = 1e-9 * ls.cavity_decay;
  r.stable = r.max_real_eig < -r.margin;
  return r;
}

}  // namespace optomech
