#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "optomech/constants.hpp"

namespace optomech {

enum class DetuningMode { effective, bare };

/// Pump-1 detuning, given either as the displacement-shifted effective
/// value Δ_eff or as the bare cavity-laser detuning Δ0 (rad/s).
struct PumpDetuning {
  DetuningMode mode = DetuningMode::effective;
  double value = 0.0;
};

/// Lab-level inputs. Every rate and frequency is angular (rad/s).
struct PhysicalParams {
  double cavity_length_m = 0.0;
  double mirror_mass_kg = 0.0;
  double temperature_K = 0.0;
  double mech_freq = 0.0;     // ω_m
  double mech_damping = 0.0;  // γ_m
  double cavity_decay = 0.0;  // κ, shared by every cavity mode
  double wavelength_m = 0.0;  // pump-1 wavelength
  double pump1_power_W = 0.0;
  double pump2_power_W = 0.0;
  std::vector<double> probe_powers_W;
  double pump_separation = 0.0;  // δ = ω_l2 - ω_l1
  double relative_phase = 0.0;   // φ
  std::vector<double> probe_detunings;
  PumpDetuning pump1_detuning;
  /// Whether `probe_detunings` already include the static shift -g_j q.
  DetuningMode detuning_interpretation = DetuningMode::effective;
  double fourier_freq = 0.0;

  std::size_t probe_count() const noexcept { return probe_powers_W.size(); }
};

/// Soft violations of the model's regime of validity.
enum class ParamWarning {
  unresolved_sideband,  // ω_m / κ <= 1
  low_mechanical_q,     // ω_m / γ_m <= 100
  probe_not_weak,       // some P_pj > 0.2 min(P_l1, P_l2)
};

std::string_view to_string(ParamWarning w) noexcept;

/// Throws ParameterError on hard violations; returns the soft ones.
std::vector<ParamWarning> validate(const PhysicalParams& p);

/// Model coefficients derived from PhysicalParams.
struct DerivedParams {
  double g0 = 0.0;                 // rad/s
  std::vector<double> g_probe;     // rad/s
  double eta_l1 = 0.0;             // s^-1
  double eta_l2 = 0.0;
  std::vector<double> eta_probe;
  double n_thermal = 0.0;
  double omega_laser1 = 0.0;       // rad/s
  double q_m = 0.0;                // ω_m / γ_m
};

/// Bose-Einstein occupancy; exactly 0 at T = 0.
double thermal_occupancy(double omega, double temperature_K,
                         const PhysicalConstants& c = kCodata2018);

/// Couplings g = ω_l1 sqrt(ħ/(m ω_m)) / L, drive rates η = sqrt(2Pκ/(ħω_l1))
/// and the thermal phonon number. A single optical carrier ω_l1 = 2πc/λ is
/// used for every mode; the MHz offsets between them are below 1e-8 relative.
DerivedParams derive_params(const PhysicalParams& p,
                            const PhysicalConstants& c = kCodata2018);

/// The reference setup: 25 mm cavity, 150 ng mirror at 1 MHz, Q = 1e6,
/// κ = 2π·430 kHz, 1064 nm pumps of 40 mW each on the red and blue
/// sidebands (δ = 2ω_m, φ = -0.3), and `probes` probes of 0.8 mW each
/// red-detuned by ω_m. Pump 1 sits at Δ_eff = ω_m.
PhysicalParams reference_params(std::size_t probes = 1);

}  // namespace optomech
