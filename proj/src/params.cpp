#include "optomech/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::string_view to_string(ParamWarning w) noexcept {
  switch (w) {
    case ParamWarning::unresolved_sideband:
      return "unresolved_sideband";
    case ParamWarning::low_mechanical_q:
      return "low_mechanical_q";
    case ParamWarning::probe_not_weak:
      return "probe_not_weak";
  }
  return "unknown";
}

std::vector<ParamWarning> validate(const PhysicalParams& p) {
  require(std::isfinite(p.cavity_length_m) && p.cavity_length_m > 0.0,
          "cavity length must be positive");
  require(std::isfinite(p.mirror_mass_kg) && p.mirror_mass_kg > 0.0,
          "mirror mass must be positive");
  require(std::isfinite(p.mech_freq) && p.mech_freq > 0.0,
          "mechanical frequency must be positive");
  require(std::isfinite(p.wavelength_m) && p.wavelength_m > 0.0,
          "wavelength must be positive");
  require(std::isfinite(p.mech_damping) && p.mech_damping > 0.0,
          "mechanical damping must be positive");
  require(finite_nonneg(p.temperature_K), "temperature must be >= 0");
  require(finite_nonneg(p.cavity_decay), "cavity decay must be >= 0");
  require(finite_nonneg(p.pump1_power_W) && finite_nonneg(p.pump2_power_W),
          "pump powers must be >= 0");
  require(p.probe_powers_W.size() == p.probe_detunings.size(),
          "probe power and detuning lists differ in length");
  for (double pw : p.probe_powers_W) {
    require(finite_nonneg(pw), "probe powers must be >= 0");
  }
  for (double d : p.probe_detunings) {
    require(std::isfinite(d), "probe detunings must be finite");
  }
  require(std::isfinite(p.pump_separation) && std::isfinite(p.relative_phase) &&
              std::isfinite(p.pump1_detuning.value) &&
              std::isfinite(p.fourier_freq),
          "detunings, phase and Fourier frequency must be finite");

  std::vector<ParamWarning> warnings;
  if (p.mech_freq <= p.cavity_decay) {
    warnings.push_back(ParamWarning::unresolved_sideband);
  }
  if (p.mech_freq / p.mech_damping <= 100.0) {
    warnings.push_back(ParamWarning::low_mechanical_q);
  }
  const double weakest_pump = std::min(p.pump1_power_W, p.pump2_power_W);
  if (std::any_of(p.probe_powers_W.begin(), p.probe_powers_W.end(),
                  [&](double pw) { return pw > 0.2 * weakest_pump; })) {
    warnings.push_back(ParamWarning::probe_not_weak);
  }
  return warnings;
}

double thermal_occupancy(double omega, double temperature_K,
                         const PhysicalConstants& c) {
  if (temperature_K == 0.0) return 0.0;
  return 1.0 / std::expm1(c.hbar * omega / (c.k_B * temperature_K));
}

DerivedParams derive_params(const PhysicalParams& p,
                            const PhysicalConstants& c) {
  validate(p);

  DerivedParams d;
  d.omega_laser1 = kTwoPi * c.c / p.wavelength_m;
  const double zero_point =
      std::sqrt(c.hbar / (p.mirror_mass_kg * p.mech_freq));
  const double coupling = d.omega_laser1 * zero_point / p.cavity_length_m;
  const auto drive = [&](double power) {
    return std::sqrt(2.0 * power * p.cavity_decay / (c.hbar * d.omega_laser1));
  };

  d.g0 = coupling;
  d.eta_l1 = drive(p.pump1_power_W);
  d.eta_l2 = drive(p.pump2_power_W);
  d.g_probe.assign(p.probe_count(), coupling);
  d.eta_probe.reserve(p.probe_count());
  for (double pw : p.probe_powers_W) d.eta_probe.push_back(drive(pw));
  d.n_thermal = thermal_occupancy(p.mech_freq, p.temperature_K, c);
  d.q_m = p.mech_freq / p.mech_damping;
  return d;
}

PhysicalParams reference_params(std::size_t probes) {
  const double omega_m = kTwoPi * 1.0e6;
  PhysicalParams p;
  p.cavity_length_m = 0.025;
  p.mirror_mass_kg = 150e-12;
  p.temperature_K = 0.1;
  p.mech_freq = omega_m;
  p.mech_damping = kTwoPi * 1.0;
  p.cavity_decay = kTwoPi * 4.3e5;
  p.wavelength_m = 1064e-9;
  p.pump1_power_W = 0.040;
  p.pump2_power_W = 0.040;
  p.probe_powers_W.assign(probes, 0.040 / 50.0);
  p.probe_detunings.assign(probes, omega_m);
  p.pump_separation = 2.0 * omega_m;
  p.relative_phase = -0.3;
  p.pump1_detuning = {DetuningMode::effective, omega_m};
  p.detuning_interpretation = DetuningMode::effective;
  p.fourier_freq = 0.0;
  return p;
}

}  // namespace optomech
