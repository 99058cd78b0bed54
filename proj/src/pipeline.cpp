#include "optomech/pipeline.hpp"

namespace optomech {

std::vector<PairSpec> default_pairs(std::size_t probes) {
  std::vector<PairSpec> pairs{{Mode::pump_minus(), Mode::pump_plus(), {}}};
  for (std::size_t j = 1; j <= probes; ++j) {
    pairs.push_back({Mode::pump_minus(), Mode::probe_mode(j), {}});
  }
  for (std::size_t j = 1; j <= probes; ++j) {
    pairs.push_back({Mode::pump_plus(), Mode::probe_mode(j), {}});
  }
  for (std::size_t j = 1; j <= probes; ++j) {
    for (std::size_t k = j + 1; k <= probes; ++k) {
      pairs.push_back({Mode::probe_mode(j), Mode::probe_mode(k), {}});
    }
  }
  return pairs;
}

PointResult evaluate_point(const PhysicalParams& p, double delta_eff,
                           const std::vector<PairSpec>& pairs, double omega,
                           MirrorCoupling coupling) {
  PointResult r;
  r.params = p;
  r.warnings = validate(p);
  r.derived = derive_params(p);
  r.working_point = solve_direct(r.derived, p, delta_eff);
  r.delta0 = delta0_for(r.derived, p, delta_eff);
  r.system = build_linear_system(r.working_point, r.derived, p, coupling);
  r.noise = build_noise_model(r.derived, r.system.index.mode_count());
  r.stability = check_stability(r.system);
  if (!r.stability.stable) return r;

  r.spectrum = output_spectral_matrix(r.system, r.noise, omega);
  for (const auto& pair : pairs) {
    r.correlations.push_back(
        pair.sign_u ? duan_correlation(*r.spectrum, pair.i, pair.j, *pair.sign_u)
                    : duan_best(*r.spectrum, pair.i, pair.j));
  }
  r.spectrum->pair_correlations = r.correlations;
  return r;
}

PointResult evaluate_point(const PhysicalParams& p,
                           const std::vector<PairSpec>& pairs,
                           MirrorCoupling coupling) {
  validate(p);
  const double delta_eff = resolve_delta_eff(derive_params(p), p);
  return evaluate_point(p, delta_eff, pairs, p.fourier_freq, coupling);
}

}  // namespace optomech
