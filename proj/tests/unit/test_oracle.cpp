#include <doctest.h>

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "optomech/errors.hpp"
#include "optomech/lyapunov.hpp"
#include "optomech/spectral_integral.hpp"
#include "optomech/spectrum.hpp"
#include "optomech/time_domain.hpp"
#include "support.hpp"

using namespace optomech;
using testing::rel_err;

namespace {

/// vec(P) = −(I ⊗ A + A ⊗ I)⁻¹ vec(Q), fully independent of the Schur route.
Eigen::MatrixXd kronecker_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0; r < n; ++r) {
        k(i * n + r, j * n + r) += a(i, j);  // A ⊗ I acting on column-major vec
        k(r * n + i, r * n + j) += a(i, j);  // I ⊗ A
      }
    }
  }
  const Eigen::VectorXd vq = Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  const Eigen::VectorXd vp = -k.fullPivLu().solve(vq);
  return Eigen::Map<const Eigen::MatrixXd>(vp.data(), n, n);
}

Eigen::MatrixXd random_stable(testing::Gen& g, int n) {
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = g.uniform(-1.0, 1.0) * std::pow(10.0, g.uniform(-1, 2));
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  const double shift = es.eigenvalues().real().maxCoeff();
  return a - (shift + g.log_uniform(1e-2, 10.0)) * Eigen::MatrixXd::Identity(n, n);
}

struct Reference {
  PhysicalParams p;
  LinearSystem ls;
  NoiseModel nm;
};

Reference reference(std::size_t probes = 1) {
  Reference r;
  r.p = reference_params(probes);
  r.ls = testing::system_at(r.p);
  r.nm = build_noise_model(derive_params(r.p), probes + 3);
  return r;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("scalar balance and noiseless limits") {
  for (int n : {1, 3, 8}) {
    const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
    CHECK((solve_continuous_lyapunov(-i, i) - 0.5 * i).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(solve_continuous_lyapunov(-i, Eigen::MatrixXd::Zero(n, n)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("marginal and unstable systems are refused") {
  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(solve_continuous_lyapunov(rot, Eigen::MatrixXd::Identity(2, 2)), SingularLyapunov);

  Reference r = reference();
  r.p.pump2_power_W = 2.0 * r.p.pump1_power_W;
  r.ls = testing::system_at(r.p);
  CHECK_THROWS_AS(lyapunov_covariance(r.ls, r.nm), UnstableSystem);
  CHECK_THROWS_AS(integrate_intracavity_spectrum(r.ls, r.nm), UnstableSystem);
}

TEST_CASE("property: Schur route matches the Kronecker brute force") {
  testing::Gen g(51);
  for (int k = 0; k < 100; ++k) {
    const int n = g.integer(1, 9);
    const Eigen::MatrixXd a = random_stable(g, n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Random(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) b(r, c) = g.uniform(-1.0, 1.0);
    }
    const Eigen::MatrixXd q = b * b.transpose();
    const Eigen::MatrixXd p = solve_continuous_lyapunov(a, q);
    const Eigen::MatrixXd brute = kronecker_lyapunov(a, q);
    const double scale = brute.cwiseAbs().maxCoeff();
    CHECK((p - brute).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("reference covariance: residual bound and Kronecker agreement") {
  const Reference r = reference(1);
  const LyapunovSolution sol = lyapunov_covariance(r.ls, r.nm);
  const Eigen::MatrixXd ds = symmetrized_diffusion(r.ls, r.nm);
  CHECK(sol.residual <= 1e-8 * ds.cwiseAbs().maxCoeff());
  CHECK((sol.covariance - sol.covariance.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd brute = kronecker_lyapunov(r.ls.drift, ds);
  CHECK(max_entrywise_relative_error(brute, sol.covariance) < 1e-8);
  // Optical vacuum contributes 1/2 per quadrature; the driven modes only add.
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(sol.covariance(k, k) >= 0.5 - 1e-12);
}

TEST_CASE("decoupled system relaxes to vacuum and thermal variances") {
  PhysicalParams p = reference_params(1);
  DerivedParams d = derive_params(p);
  d.g0 = 0.0;
  d.g_probe[0] = 0.0;
  const LinearSystem ls = build_linear_system(solve_direct(d, p, p.mech_freq), d, p);
  const NoiseModel nm = build_noise_model(d, 4);
  const Eigen::MatrixXd cov = lyapunov_covariance(ls, nm).covariance;
  Eigen::VectorXd expected = Eigen::VectorXd::Constant(8, 0.5);
  expected.tail(2).setConstant(d.n_thermal + 0.5);
  CHECK(max_entrywise_relative_error(Eigen::MatrixXd(expected.asDiagonal()), cov) < 1e-10);
}

TEST_CASE("spectral integral equals the Lyapunov covariance") {
  for (std::size_t probes : {std::size_t{1}, std::size_t{2}}) {
    const Reference r = reference(probes);
    const LyapunovSolution sol = lyapunov_covariance(r.ls, r.nm);
    const SpectralIntegral integral = integrate_intracavity_spectrum(r.ls, r.nm);
    CHECK(max_entrywise_relative_error(sol.covariance, integral.covariance) < 1e-6);
    CHECK(integral.error_estimate <= 1e-10 * sol.covariance.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("entrywise comparison handles zeros and shape") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  CHECK(max_entrywise_relative_error(a, a) == 0.0);
  Eigen::MatrixXd b = a;
  b(0, 1) = 1e-300;
  CHECK(std::isinf(max_entrywise_relative_error(a, b)));
  CHECK_THROWS_AS(max_entrywise_relative_error(a, Eigen::MatrixXd::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("seed mixing separates streams") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}

TEST_CASE("Monte Carlo agrees with the frequency domain at the reference point") {
  const Reference r = reference(1);
  const SpectralResult sr = output_spectral_matrix(r.ls, r.nm, 0.0);
  const std::vector<PairRequest> pairs{
      {Mode::pump_minus(), Mode::pump_plus(), Sign::plus},
      {Mode::pump_minus(), Mode::probe_mode(1), Sign::minus},
      {Mode::pump_plus(), Mode::probe_mode(1), Sign::plus}};
  const TrajectoryStats stats =
      simulate_time_domain(r.ls, r.nm, pairs, default_trajectory_options(r.ls, 101));
  CHECK(stats.windows == 2000);
  REQUIRE(stats.estimates.size() == 3);
  for (const auto& e : stats.estimates) {
    const double vf = duan_correlation(sr, e.pair.i, e.pair.j, e.pair.sign_u).value;
    CHECK(e.standard_error > 0.0);
    CHECK(e.standard_error <= 0.05 * vf);
    CHECK(std::abs(e.value - vf) <= 3.0 * e.standard_error);
  }
}

TEST_CASE("Monte Carlo of decoupled channels gives the vacuum value") {
  PhysicalParams p = reference_params(1);
  DerivedParams d = derive_params(p);
  d.g0 = 0.0;
  d.g_probe[0] = 0.0;
  const LinearSystem ls = build_linear_system(solve_direct(d, p, p.mech_freq), d, p);
  const NoiseModel nm = build_noise_model(d, 4);
  TrajectoryOptions o;
  o.window = 200.0 / p.cavity_decay;
  o.dt = o.window / 50.0;
  o.duration = 2000.0 * o.window;
  o.seed = 5;
  const TrajectoryStats stats = simulate_time_domain(
      ls, nm, {{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}, {Mode::pump_minus(), Mode::probe_mode(1), Sign::minus}}, o);
  for (const auto& e : stats.estimates) CHECK(std::abs(e.value - 2.0) <= 3.0 * e.standard_error);
}

TEST_CASE("noiseless trajectories decay to zero") {
  const Reference r = reference(1);
  const NoiseModel silent{Eigen::MatrixXcd::Zero(8, 8)};
  TrajectoryOptions o = default_trajectory_options(r.ls, 9);
  o.duration = 50.0 * o.window;
  o.initial_state = Eigen::VectorXd::Constant(8, 1e3);
  const std::vector<PairRequest> pairs{{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}};

  SUBCASE("zero diffusion") {
    const TrajectoryStats s = simulate_time_domain(r.ls, silent, pairs, o);
    CHECK(s.estimates[0].value < 1e-12);  // initial |u|² ~ 1e6
  }
  SUBCASE("zero diffusion and zero input gain") {
    LinearSystem cut = r.ls;
    cut.input_gain.setZero();
    const TrajectoryStats s = simulate_time_domain(cut, silent, pairs, o);
    CHECK(s.estimates[0].value == 0.0);
  }
}

TEST_CASE("fixed seed reproduces bit for bit across thread counts") {
  const Reference r = reference(1);
  const std::vector<PairRequest> pairs{{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}};
  TrajectoryOptions o = default_trajectory_options(r.ls, 77);
  o.duration /= 10.0;
  o.threads = 1;
  const TrajectoryStats a = simulate_time_domain(r.ls, r.nm, pairs, o);
  o.threads = 4;
  const TrajectoryStats b = simulate_time_domain(r.ls, r.nm, pairs, o);
  CHECK(a.estimates[0].value == b.estimates[0].value);
  CHECK(a.estimates[0].standard_error == b.estimates[0].standard_error);
  CHECK(a.seed == 77);
  o.seed = 78;
  CHECK(simulate_time_domain(r.ls, r.nm, pairs, o).estimates[0].value != a.estimates[0].value);
}

TEST_CASE("Euler-Maruyama runs only under its step bound") {
  const Reference r = reference(1);
  const std::vector<PairRequest> pairs{{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}};
  TrajectoryOptions o;
  o.scheme = Scheme::euler_maruyama;
  o.dt = 0.06 / r.p.mech_freq;
  o.window = 1000.0 * o.dt;
  o.duration = 20.0 * o.window;
  CHECK_THROWS_AS(simulate_time_domain(r.ls, r.nm, pairs, o), std::invalid_argument);
  o.dt = 0.01 / r.p.mech_freq;
  o.window = 1000.0 * o.dt;
  o.duration = 20.0 * o.window;
  const TrajectoryStats s = simulate_time_domain(r.ls, r.nm, pairs, o);
  CHECK(std::isfinite(s.estimates[0].value));
}

TEST_CASE("trajectory errors") {
  Reference r = reference(1);
  const std::vector<PairRequest> pairs{{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}};
  TrajectoryOptions o = default_trajectory_options(r.ls, 1);
  o.duration = 10.0 * o.window;
  o.divergence_bound = 1e-3;
  CHECK_THROWS_AS(simulate_time_domain(r.ls, r.nm, pairs, o), InstabilityDetected);

  o.divergence_bound = 1e100;
  CHECK_THROWS_AS(simulate_time_domain(r.ls, r.nm, {{Mode::pump_minus(), Mode::mirror(), Sign::plus}}, o),
                  std::invalid_argument);
  o.duration = 0.5 * o.window;
  CHECK_THROWS_AS(simulate_time_domain(r.ls, r.nm, pairs, o), std::invalid_argument);

  r.p.pump2_power_W = 2.0 * r.p.pump1_power_W;
  r.ls = testing::system_at(r.p);
  CHECK_THROWS_AS(simulate_time_domain(r.ls, r.nm, pairs, o), UnstableSystem);
  CHECK_THROWS_AS(default_trajectory_options(r.ls, 1), UnstableSystem);
}

TEST_CASE("trajectory dump writes time plus every quadrature") {
  const Reference r = reference(1);
  TrajectoryOptions o = default_trajectory_options(r.ls, 3);
  o.duration = 4.0 * o.window;
  o.trajectories = 2;
  o.dump_stride = 10;
  std::ostringstream dump;
  o.dump = &dump;
  simulate_time_domain(r.ls, r.nm, {{Mode::pump_minus(), Mode::pump_plus(), Sign::plus}}, o);
  std::istringstream in(dump.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(rows == 2 * 100 / 10);
}

}
