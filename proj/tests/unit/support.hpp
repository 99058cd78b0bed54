#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "optomech/dynamics.hpp"
#include "optomech/params.hpp"
#include "optomech/working_point.hpp"

namespace testing {

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Hand-rolled generator over mt19937_64; every property test seeds its own.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  /// Multiplies by a factor in [1 - spread, 1 + spread].
  double jitter(double v, double spread) { return v * uniform(1.0 - spread, 1.0 + spread); }

 private:
  std::mt19937_64 engine_;
};

/// Reference parameters with every scale perturbed by up to ±spread and
/// R, φ and probe settings drawn around the reference point.
inline optomech::PhysicalParams perturbed_reference(Gen& g, std::size_t probes = 1,
                                                    double spread = 0.05) {
  optomech::PhysicalParams p = optomech::reference_params(probes);
  p.cavity_length_m = g.jitter(p.cavity_length_m, spread);
  p.mirror_mass_kg = g.jitter(p.mirror_mass_kg, spread);
  p.temperature_K = g.jitter(p.temperature_K, spread);
  p.mech_freq = g.jitter(p.mech_freq, spread);
  p.mech_damping = g.jitter(p.mech_damping, spread);
  p.cavity_decay = g.jitter(p.cavity_decay, spread);
  p.wavelength_m = g.jitter(p.wavelength_m, spread);
  p.pump1_power_W = g.jitter(p.pump1_power_W, spread);
  p.pump2_power_W = p.pump1_power_W * g.uniform(0.5, 1.0);
  p.pump_separation = 2.0 * p.mech_freq * g.uniform(1.0 - spread, 1.0 + spread);
  p.relative_phase = g.uniform(-1.0, 1.0);
  for (auto& pw : p.probe_powers_W) pw = g.jitter(pw, spread);
  for (auto& det : p.probe_detunings) det = p.mech_freq * g.uniform(0.9, 1.1);
  p.pump1_detuning.value = p.mech_freq * g.uniform(0.9, 1.1);
  return p;
}

/// Linear system at Δ_eff taken from p.pump1_detuning (effective mode).
inline optomech::LinearSystem system_at(const optomech::PhysicalParams& p) {
  const auto d = optomech::derive_params(p);
  const auto wp = optomech::solve_direct(d, p, p.pump1_detuning.value);
  return optomech::build_linear_system(wp, d, p);
}

}  // namespace testing
