#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "optomech/dynamics.hpp"
#include "optomech/spectrum.hpp"

namespace optomech {

enum class Scheme {
  /// Exact Gaussian transition of the linear SDE over each step (no
  /// discretization bias at any dt).
  exact,
  /// Euler-Maruyama; requires dt <= 0.05 / max(κ, ω_m).
  euler_maruyama,
};

struct TrajectoryOptions {
  double duration = 0.0;  // s, summed over trajectories, burn-in excluded
  double dt = 0.0;        // s
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::exact;
  double window = 0.0;   // s, averaging window for the ω = 0 estimate
  double burn_in = 0.0;  // s, per trajectory
  unsigned trajectories = 8;
  unsigned threads = 0;  // 0: worker_count()
  /// Initial fluctuation state for every trajectory; empty means zero.
  Eigen::VectorXd initial_state;
  double divergence_bound = 1e100;
  /// When set, trajectory 0 is written here as CSV: t, then the state
  /// quadratures in ModeIndex order (X_0m,Y_0m,...,X_b,Y_b), one row every
  /// `dump_stride` steps after burn-in.
  std::ostream* dump = nullptr;
  std::size_t dump_stride = 1;
};

/// Window length 200/|max Re λ|, burn-in 20/|max Re λ|, dt = window/100,
/// 2000 windows over 8 trajectories, exact scheme.
TrajectoryOptions default_trajectory_options(const LinearSystem& ls,
                                             std::uint64_t seed);

struct PairRequest {
  Mode i;
  Mode j;
  Sign sign_u = Sign::plus;
};

struct PairEstimate {
  PairRequest pair;
  double value = 0.0;
  double standard_error = 0.0;
};

struct TrajectoryStats {
  std::uint64_t seed = 0;
  double duration = 0.0;
  double dt = 0.0;
  double window = 0.0;
  std::size_t windows = 0;
  std::vector<PairEstimate> estimates;
};

/// Monte-Carlo realization of du = M u dt + F dW with dW of covariance
/// Re(D) dt. Output quadratures follow the input-output relation with the
/// same increments that drive the state. V at ω = 0 is estimated as
/// T_w <Ū² + V̄²> over windows of length T_w, where Ū, V̄ are window means of
/// the Duan combinations; the standard error is the window-to-window scatter.
/// Trajectories run concurrently and merge in seed order, so results are
/// bit-identical for a given seed regardless of thread count.
///
/// Throws UnstableSystem for an unstable drift matrix and
/// InstabilityDetected if a trajectory diverges.
TrajectoryStats simulate_time_domain(const LinearSystem& ls,
                                     const NoiseModel& nm,
                                     const std::vector<PairRequest>& pairs,
                                     const TrajectoryOptions& opts);

/// SplitMix64 finalizer; derives per-trajectory seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace optomech
