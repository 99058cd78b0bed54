#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "optomech/dynamics.hpp"
#include "optomech/params.hpp"
#include "optomech/spectrum.hpp"
#include "optomech/working_point.hpp"

namespace optomech {

/// A pair of optical modes plus an optional fixed sign; without one the
/// sign giving the smaller V is chosen.
struct PairSpec {
  Mode i;
  Mode j;
  std::optional<Sign> sign_u;
};

/// Pairs (0m,0p), (0m,j), (0p,j) for every probe, then (j,k) among probes.
std::vector<PairSpec> default_pairs(std::size_t probes);

struct PointResult {
  PhysicalParams params;
  DerivedParams derived;
  std::vector<ParamWarning> warnings;
  WorkingPoint working_point;
  double delta0 = 0.0;  // bare detuning realizing working_point.delta_eff
  LinearSystem system;
  NoiseModel noise;
  StabilityReport stability;
  /// Empty when unstable: V is not defined there.
  std::optional<SpectralResult> spectrum;
  std::vector<DuanCorrelation> correlations;
};

/// validate -> derive_params -> solve_direct at Δ_eff -> linear system ->
/// stability -> (if stable) output spectrum at `omega` and the Duan
/// correlations of `pairs`.
PointResult evaluate_point(const PhysicalParams& p, double delta_eff,
                           const std::vector<PairSpec>& pairs, double omega,
                           MirrorCoupling coupling = MirrorCoupling::per_mode);

/// As above with Δ_eff from resolve_delta_eff and ω from p.fourier_freq.
PointResult evaluate_point(const PhysicalParams& p,
                           const std::vector<PairSpec>& pairs,
                           MirrorCoupling coupling = MirrorCoupling::per_mode);

}  // namespace optomech
