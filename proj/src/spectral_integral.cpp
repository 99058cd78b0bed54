#include "optomech/spectral_integral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "optomech/constants.hpp"
#include "optomech/errors.hpp"
#include "optomech/lyapunov.hpp"

namespace optomech {

namespace {

using cd = std::complex<double>;

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) with the embedded
// 7-point Gauss weights at the odd Kronrod nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a = 0.0;
  double b = 0.0;
  Eigen::MatrixXd value;
  double error = 0.0;
  bool operator<(const Piece& other) const { return error < other.error; }
};

}  // namespace

Eigen::MatrixXcd intracavity_spectrum(const LinearSystem& ls,
                                      const Eigen::MatrixXd& diffusion,
                                      double omega) {
  Eigen::MatrixXcd resolvent = -ls.drift.cast<cd>();
  resolvent.diagonal().array() += cd(0.0, -omega);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(resolvent);
  const Eigen::MatrixXcd g = lu.inverse();
  return g * diffusion.cast<cd>() * g.adjoint();
}

SpectralIntegral integrate_intracavity_spectrum(const LinearSystem& ls,
                                                const NoiseModel& nm,
                                                double rel_tol,
                                                int max_intervals) {
  const StabilityReport stab = check_stability(ls);
  if (!stab.stable) {
    throw UnstableSystem("spectral integral requested for an unstable system");
  }
  const Eigen::MatrixXd ds = symmetrized_diffusion(ls, nm);
  const double s = ls.cavity_decay > 0.0 ? ls.cavity_decay : 1.0;
  const Eigen::Index dim = ls.drift.rows();
  int evaluations = 0;

  // Integrand in θ, including the Jacobian s sec²θ and the 1/2π.
  const auto integrand = [&](double theta) -> Eigen::MatrixXd {
    ++evaluations;
    const double c = std::cos(theta);
    const double omega = s * std::tan(theta);
    return intracavity_spectrum(ls, ds, omega).real() * (s / (c * c) / kTwoPi);
  };

  const auto gauss_kronrod = [&](double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Eigen::MatrixXd center = integrand(mid);
    Eigen::MatrixXd kronrod = kKronrod[7] * center;
    Eigen::MatrixXd gauss = kGauss[3] * center;
    for (int k = 0; k < 7; ++k) {
      const Eigen::MatrixXd sum =
          integrand(mid - half * kNodes[k]) + integrand(mid + half * kNodes[k]);
      kronrod += kKronrod[k] * sum;
      if (k % 2 == 1) gauss += kGauss[k / 2] * sum;
    }
    Piece p;
    p.a = a;
    p.b = b;
    p.value = half * kronrod;
    p.error = (half * (kronrod - gauss)).cwiseAbs().maxCoeff();
    return p;
  };

  // Break θ at every resonance ω = -Im λ.
  std::vector<double> breaks = {-0.5 * kPi, 0.5 * kPi};
  for (Eigen::Index k = 0; k < stab.eigenvalues.size(); ++k) {
    breaks.push_back(std::atan(-stab.eigenvalues(k).imag() / s));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x < 1e-12; }),
               breaks.end());

  std::priority_queue<Piece> pieces;
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dim, dim);
  double error = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    Piece p = gauss_kronrod(breaks[k], breaks[k + 1]);
    total += p.value;
    error += p.error;
    pieces.push(std::move(p));
  }

  while (error > rel_tol * total.cwiseAbs().maxCoeff() &&
         static_cast<int>(pieces.size()) < max_intervals) {
    Piece worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = gauss_kronrod(worst.a, mid);
    Piece right = gauss_kronrod(mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    pieces.push(std::move(left));
    pieces.push(std::move(right));
  }

  // Re-sum to shed the drift accumulated by incremental updates.
  SpectralIntegral out;
  out.covariance = Eigen::MatrixXd::Zero(dim, dim);
  double err = 0.0;
  while (!pieces.empty()) {
    out.covariance += pieces.top().value;
    err += pieces.top().error;
    pieces.pop();
  }
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  out.error_estimate = err;
  out.evaluations = evaluations;
  return out;
}

double max_entrywise_relative_error(const Eigen::MatrixXd& a,
                                    const Eigen::MatrixXd& b, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrices differ in shape");
  }
  const double scale = floor * a.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const double denom = std::max(std::abs(a(r, c)), scale);
      if (denom == 0.0) {
        if (b(r, c) != 0.0) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)) / denom);
    }
  }
  return worst;
}

}  // namespace optomech
