#pragma once

#include <complex>
#include <vector>

#include "optomech/params.hpp"

namespace optomech {

/// Classical steady state about which the fluctuations are linearized.
///
/// Pump 1 and the probes are phase-referenced so their amplitudes are real
/// and nonnegative; pump 2 keeps its full complex amplitude (relative phase
/// and detuning phase included).
struct WorkingPoint {
  double alpha_0minus = 0.0;
  std::complex<double> alpha_0plus;
  std::vector<double> alpha_probe;
  std::complex<double> beta;
  double q = 0.0;  // β + β*, exactly 2 Re β
  double delta_eff = 0.0;
  std::vector<double> probe_eff_detunings;
};

/// Steady state at a given effective pump-1 detuning. Only the pumps drive
/// the mirror; probe radiation pressure is neglected.
WorkingPoint solve_direct(const DerivedParams& d, const PhysicalParams& p,
                          double delta_eff);

struct FixedPointOptions {
  double tol = 1e-12;
  int max_iter = 10000;
};

struct DisplacementSolution {
  double q = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |f(q) - q|
};

/// The scalar map q -> (2 g0 ω_m / (γ_m² + ω_m²)) Σ_pumps η² / (κ² + Δ²),
/// with pump detunings Δ0 - g0 q and Δ0 - δ - g0 q.
double displacement_map(const DerivedParams& d, const PhysicalParams& p,
                        double delta0, double q);

/// Smallest fixed point of displacement_map, i.e. the branch reached from
/// the undriven state q = 0.
///
/// Iterates q <- q + 0.5 (f(q) - q) from q = 0. Steps are capped at half a
/// cavity linewidth in q (κ / 2g0) so a root cannot be jumped over; a step
/// that crosses a root is finished by bisection. Converged once successive
/// iterates (or the bracket) differ by at most tol·max(1, |q|). Throws
/// NonConvergence after max_iter evaluations.
DisplacementSolution solve_displacement(const DerivedParams& d,
                                        const PhysicalParams& p, double delta0,
                                        const FixedPointOptions& opts = {});

/// Steady state at a bare pump-1 detuning Δ0 (rad/s).
WorkingPoint solve_self_consistent(const DerivedParams& d,
                                   const PhysicalParams& p, double delta0,
                                   const FixedPointOptions& opts = {});

/// Bare detuning Δ0 = Δ_eff + g0 q(Δ_eff) that realizes a target Δ_eff.
double delta0_for(const DerivedParams& d, const PhysicalParams& p,
                  double target_delta_eff);

/// Δ_eff implied by `p.pump1_detuning`, solving self-consistently when it is
/// given as a bare detuning.
double resolve_delta_eff(const DerivedParams& d, const PhysicalParams& p,
                         const FixedPointOptions& opts = {});

}  // namespace optomech
