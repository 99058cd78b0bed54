#include "optomech/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

using cd = std::complex<double>;

void require_optical_pair(const SpectralResult& sr, Mode i, Mode j) {
  if (!i.is_optical() || !j.is_optical()) {
    throw std::invalid_argument("Duan correlations are defined for optical "
                                "outputs only");
  }
  if (i == j) throw std::invalid_argument("Duan correlation needs i != j");
  sr.index.slot(i);
  sr.index.slot(j);
}

}  // namespace

Eigen::MatrixXcd output_transfer(const LinearSystem& ls, double omega) {
  const auto no = static_cast<Eigen::Index>(ls.index.optical_dimension());

  Eigen::MatrixXcd resolvent = -ls.drift.cast<cd>();
  resolvent.diagonal().array() += cd(0.0, -omega);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(resolvent);
  if (!(lu.rcond() > 1e-14)) throw SingularAtFrequency(omega);

  const Eigen::MatrixXcd response =
      lu.solve(Eigen::MatrixXcd(ls.input_gain.cast<cd>().asDiagonal()));

  Eigen::MatrixXcd t =
      ls.input_gain.head(no).cast<cd>().asDiagonal() * response.topRows(no);
  t.leftCols(no).diagonal().array() -= 1.0;
  return t;
}

SpectralResult output_spectral_matrix(const LinearSystem& ls,
                                      const NoiseModel& nm, double omega) {
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("Fourier frequency must be finite");
  }
  const Eigen::MatrixXcd t = output_transfer(ls, omega);
  SpectralResult sr;
  sr.omega = omega;
  sr.index = ls.index;
  sr.s_out = t * nm.spectral * t.adjoint();
  sr.unstable = !check_stability(ls).stable;
  return sr;
}

DuanCorrelation duan_correlation(const SpectralResult& sr, Mode i, Mode j,
                                 Sign sign_u) {
  require_optical_pair(sr, i, j);
  const auto& s = sr.s_out;
  const auto xi = static_cast<Eigen::Index>(sr.index.x(i));
  const auto xj = static_cast<Eigen::Index>(sr.index.x(j));
  const Eigen::Index yi = xi + 1;
  const Eigen::Index yj = xj + 1;
  const double su = sign_u == Sign::plus ? 1.0 : -1.0;

  const cd diag = s(xi, xi) + s(xj, xj) + s(yi, yi) + s(yj, yj);
  const cd v = diag + su * (s(xi, xj) + s(xj, xi)) - su * (s(yi, yj) + s(yj, yi));
  if (std::abs(v.imag()) > 1e-8 * std::max(std::abs(diag), 1.0)) {
    throw Error("Duan combination has a non-negligible imaginary part; "
                "spectral matrix is not Hermitian");
  }

  DuanCorrelation c;
  c.i = i;
  c.j = j;
  c.sign_u = sign_u;
  c.sign_v = opposite(sign_u);
  c.value = v.real();
  c.entangled = c.value < 2.0 - kSeparabilityGuard;
  return c;
}

DuanCorrelation duan_best(const SpectralResult& sr, Mode i, Mode j) {
  const DuanCorrelation plus = duan_correlation(sr, i, j, Sign::plus);
  const DuanCorrelation minus = duan_correlation(sr, i, j, Sign::minus);
  return minus.value < plus.value ? minus : plus;
}

MultipartiteReport multipartite_verdict(const SpectralResult& sr,
                                        const std::vector<Mode>& parties) {
  if (parties.size() < 2) {
    throw std::invalid_argument("multipartite verdict needs >= 2 parties");
  }
  MultipartiteReport report;
  report.all_entangled = true;
  for (std::size_t a = 0; a < parties.size(); ++a) {
    for (std::size_t b = a + 1; b < parties.size(); ++b) {
      report.pairs.push_back(duan_best(sr, parties[a], parties[b]));
      report.all_entangled = report.all_entangled && report.pairs.back().entangled;
    }
  }
  return report;
}

}  // namespace optomech
