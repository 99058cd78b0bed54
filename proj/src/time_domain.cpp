#include "optomech/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "optomech/errors.hpp"
#include "optomech/parallel.hpp"

namespace optomech {

namespace {

/// Standard normal deviates from mt19937_64 by Box-Muller, so the stream is
/// identical across standard library implementations.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// z = [u; J] where J integrates the optical outputs √(2κ) u_opt - n_opt.
struct Augmented {
  Eigen::MatrixXd a;      // drift of z
  Eigen::MatrixXd b;      // noise loading, z-rows by noise channels
  Eigen::VectorXd sigma;  // noise channel intensities (Re D diagonal)
};

Augmented augment(const LinearSystem& ls, const NoiseModel& nm) {
  const Eigen::Index d = ls.drift.rows();
  const auto o = static_cast<Eigen::Index>(ls.index.optical_dimension());
  Augmented aug;
  aug.a = Eigen::MatrixXd::Zero(d + o, d + o);
  aug.a.topLeftCorner(d, d) = ls.drift;
  aug.a.block(d, 0, o, o) = ls.input_gain.head(o).asDiagonal();
  aug.b = Eigen::MatrixXd::Zero(d + o, d);
  aug.b.topRows(d) = ls.input_gain.asDiagonal();
  aug.b.block(d, 0, o, o) = -Eigen::MatrixXd::Identity(o, o);
  aug.sigma = nm.spectral.real().diagonal();
  if ((nm.spectral.real() - Eigen::MatrixXd(aug.sigma.asDiagonal()))
          .cwiseAbs()
          .maxCoeff() > 0.0) {
    throw std::invalid_argument("time-domain sampler needs a noise model with "
                                "a diagonal symmetric part");
  }
  return aug;
}

/// Symmetric square root of a PSD matrix, negative round-off clamped.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& q) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (q + q.transpose()));
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal();
}

struct Stepper {
  Eigen::MatrixXd transition;
  Eigen::MatrixXd loading;  // z += loading · ξ, ξ ~ N(0, I)
};

Stepper exact_stepper(const Augmented& aug, double dt) {
  const Eigen::Index n = aug.a.rows();
  const Eigen::MatrixXd qc = aug.b * aug.sigma.asDiagonal() * aug.b.transpose();

  // Van Loan at a base step with |A| h <= 1/2, then doubling:
  // Q(2h) = Q(h) + Φ(h) Q(h) Φ(h)ᵀ, Φ(2h) = Φ(h)².
  const double norm = aug.a.cwiseAbs().rowwise().sum().maxCoeff();
  int doublings = 0;
  double h = dt;
  while (norm * h > 0.5 && doublings < 60) {
    h *= 0.5;
    ++doublings;
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  c.topLeftCorner(n, n) = -aug.a * h;
  c.topRightCorner(n, n) = qc * h;
  c.bottomRightCorner(n, n) = aug.a.transpose() * h;
  const Eigen::MatrixXd e = c.exp();
  Eigen::MatrixXd phi = e.bottomRightCorner(n, n).transpose();
  Eigen::MatrixXd q = phi * e.topRightCorner(n, n);
  for (int k = 0; k < doublings; ++k) {
    q = q + phi * q * phi.transpose();
    phi = phi * phi;
  }
  return {phi, psd_sqrt(q)};
}

Stepper euler_stepper(const Augmented& aug, double dt) {
  const Eigen::Index n = aug.a.rows();
  Stepper s;
  s.transition = Eigen::MatrixXd::Identity(n, n) + aug.a * dt;
  s.loading = aug.b * (aug.sigma * dt).cwiseSqrt().asDiagonal();
  return s;
}

struct TrajectoryResult {
  // window_values[p][w]: T_w (Ū² + V̄²) for pair p, window w
  std::vector<std::vector<double>> window_values;
};

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

TrajectoryOptions default_trajectory_options(const LinearSystem& ls,
                                             std::uint64_t seed) {
  const StabilityReport stab = check_stability(ls);
  if (!stab.stable) throw UnstableSystem("no default options for an unstable system");
  const double tau = 1.0 / std::abs(stab.max_real_eig);
  TrajectoryOptions o;
  o.seed = seed;
  o.scheme = Scheme::exact;
  o.window = 200.0 * tau;
  o.burn_in = 20.0 * tau;
  o.dt = o.window / 100.0;
  o.trajectories = 8;
  o.duration = 2000.0 * o.window;
  return o;
}

TrajectoryStats simulate_time_domain(const LinearSystem& ls,
                                     const NoiseModel& nm,
                                     const std::vector<PairRequest>& pairs,
                                     const TrajectoryOptions& opts) {
  if (!check_stability(ls).stable) {
    throw UnstableSystem("time-domain simulation of an unstable system");
  }
  if (!(opts.dt > 0.0) || !(opts.duration > 0.0) || !(opts.window > 0.0) ||
      opts.burn_in < 0.0 || opts.trajectories == 0) {
    throw std::invalid_argument("trajectory options need dt, duration, "
                                "window > 0, burn_in >= 0, trajectories >= 1");
  }
  const Eigen::Index d = ls.drift.rows();
  if (opts.scheme == Scheme::euler_maruyama) {
    const auto xb = static_cast<Eigen::Index>(ls.index.x(Mode::mirror()));
    const double fastest = std::max(ls.cavity_decay, std::abs(ls.drift(xb, xb + 1)));
    if (opts.dt > 0.05 / fastest) {
      throw std::invalid_argument("Euler-Maruyama needs dt <= 0.05 / max(kappa, omega_m)");
    }
  }
  if (opts.initial_state.size() != 0 && opts.initial_state.size() != d) {
    throw std::invalid_argument("initial state has the wrong dimension");
  }
  struct Slots {
    Eigen::Index xi, xj, yi, yj;
    double su;
  };
  std::vector<Slots> slots;
  for (const auto& p : pairs) {
    if (!p.i.is_optical() || !p.j.is_optical() || p.i == p.j) {
      throw std::invalid_argument("pairs must be two distinct optical modes");
    }
    const auto xi = static_cast<Eigen::Index>(ls.index.x(p.i));
    const auto xj = static_cast<Eigen::Index>(ls.index.x(p.j));
    slots.push_back({xi, xj, xi + 1, xj + 1, p.sign_u == Sign::plus ? 1.0 : -1.0});
  }

  const auto steps_per_window =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opts.window / opts.dt)));
  const double window = static_cast<double>(steps_per_window) * opts.dt;
  const auto burn_steps =
      static_cast<std::size_t>(std::ceil(opts.burn_in / opts.dt));
  const auto windows_per_traj = static_cast<std::size_t>(
      std::floor(opts.duration / opts.trajectories / window));
  if (windows_per_traj * opts.trajectories < 2) {
    throw std::invalid_argument("duration too short for two averaging windows");
  }

  const Augmented aug = augment(ls, nm);
  const Stepper stepper = opts.scheme == Scheme::exact
                              ? exact_stepper(aug, opts.dt)
                              : euler_stepper(aug, opts.dt);
  const Eigen::Index n = aug.a.rows();
  const Eigen::Index noise_dim = stepper.loading.cols();

  std::vector<TrajectoryResult> results(opts.trajectories);
  parallel_for(opts.trajectories, worker_count(opts.threads), [&](std::size_t traj) {
    NormalStream rng(mix_seed(opts.seed, traj));
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    if (opts.initial_state.size() == d) z.head(d) = opts.initial_state;
    Eigen::VectorXd xi(noise_dim);
    Eigen::VectorXd next(n);
    std::ostream* dump = traj == 0 ? opts.dump : nullptr;
    double t = 0.0;

    const auto step = [&] {
      for (Eigen::Index k = 0; k < noise_dim; ++k) xi(k) = rng.next();
      next.noalias() = stepper.transition * z;
      next.noalias() += stepper.loading * xi;
      z.swap(next);
      t += opts.dt;
      const double norm = z.head(d).cwiseAbs().maxCoeff();
      if (!(norm <= opts.divergence_bound)) throw InstabilityDetected(t, norm);
    };

    for (std::size_t s = 0; s < burn_steps; ++s) step();

    auto& values = results[traj].window_values;
    values.assign(slots.size(), std::vector<double>(windows_per_traj));
    std::size_t counter = 0;
    for (std::size_t w = 0; w < windows_per_traj; ++w) {
      z.tail(n - d).setZero();
      for (std::size_t s = 0; s < steps_per_window; ++s) {
        step();
        if (dump && counter++ % opts.dump_stride == 0) {
          *dump << t;
          for (Eigen::Index k = 0; k < d; ++k) *dump << ',' << z(k);
          *dump << '\n';
        }
      }
      const auto j = z.tail(n - d);
      for (std::size_t p = 0; p < slots.size(); ++p) {
        const auto& sl = slots[p];
        const double u = j(sl.xi) + sl.su * j(sl.xj);
        const double v = j(sl.yi) - sl.su * j(sl.yj);
        values[p][w] = (u * u + v * v) / window;
      }
    }
  });

  TrajectoryStats stats;
  stats.seed = opts.seed;
  stats.dt = opts.dt;
  stats.window = window;
  stats.windows = windows_per_traj * opts.trajectories;
  stats.duration = static_cast<double>(stats.windows) * window;
  const auto count = static_cast<double>(stats.windows);
  for (std::size_t p = 0; p < slots.size(); ++p) {
    double sum = 0.0;
    for (const auto& r : results) {
      for (double v : r.window_values[p]) sum += v;
    }
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& r : results) {
      for (double v : r.window_values[p]) ss += (v - mean) * (v - mean);
    }
    const double variance = ss / (count - 1.0);
    stats.estimates.push_back({pairs[p], mean, std::sqrt(variance / count)});
  }
  return stats;
}

}  // namespace optomech
