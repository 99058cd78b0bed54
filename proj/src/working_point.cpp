#include "optomech/working_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

using cd = std::complex<double>;

double lorentzian_power(double eta, double kappa, double detuning) {
  return eta * eta / (kappa * kappa + detuning * detuning);
}

double displacement_prefactor(const DerivedParams& d, const PhysicalParams& p) {
  const double wm = p.mech_freq;
  const double gm = p.mech_damping;
  return 2.0 * d.g0 * wm / (gm * gm + wm * wm);
}

}  // namespace

WorkingPoint solve_direct(const DerivedParams& d, const PhysicalParams& p,
                          double delta_eff) {
  const double kappa = p.cavity_decay;
  WorkingPoint wp;
  wp.delta_eff = delta_eff;
  wp.alpha_0minus = std::abs(d.eta_l1 / cd(kappa, delta_eff));
  wp.alpha_0plus = std::polar(1.0, p.relative_phase) * d.eta_l2 /
                   cd(kappa, delta_eff - p.pump_separation);

  const double photons =
      wp.alpha_0minus * wp.alpha_0minus + std::norm(wp.alpha_0plus);
  wp.beta = cd(0.0, d.g0) * photons / cd(p.mech_damping, p.mech_freq);
  wp.q = 2.0 * wp.beta.real();

  const std::size_t n = p.probe_count();
  wp.probe_eff_detunings.resize(n);
  wp.alpha_probe.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double det = p.probe_detunings[j];
    if (p.detuning_interpretation == DetuningMode::bare) {
      det -= d.g_probe[j] * wp.q;
    }
    wp.probe_eff_detunings[j] = det;
    wp.alpha_probe[j] = std::abs(d.eta_probe[j] / cd(kappa, det));
  }
  return wp;
}

double displacement_map(const DerivedParams& d, const PhysicalParams& p,
                        double delta0, double q) {
  const double kappa = p.cavity_decay;
  const double shifted = delta0 - d.g0 * q;
  return displacement_prefactor(d, p) *
         (lorentzian_power(d.eta_l1, kappa, shifted) +
          lorentzian_power(d.eta_l2, kappa, shifted - p.pump_separation));
}

DisplacementSolution solve_displacement(const DerivedParams& d,
                                        const PhysicalParams& p, double delta0,
                                        const FixedPointOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw ParameterError("fixed point needs tol > 0 and max_iter >= 1");
  }
  const auto residual = [&](double q) {
    return displacement_map(d, p, delta0, q) - q;
  };
  const auto close = [&](double a, double b) {
    return std::abs(b - a) <= opts.tol * std::max(1.0, std::abs(a));
  };

  // Width in q of the narrowest feature of the map.
  const double max_step = d.g0 > 0.0
                              ? 0.5 * p.cavity_decay / d.g0
                              : std::numeric_limits<double>::infinity();

  double q = 0.0;
  double r = residual(q);
  for (int it = 1; it <= opts.max_iter; ++it) {
    const double step = std::clamp(0.5 * r, -max_step, max_step);
    const double next = q + step;
    const double r_next = residual(next);

    if (std::signbit(r) != std::signbit(r_next) && r_next != 0.0 && r != 0.0) {
      double lo = q, hi = next, r_lo = r;
      while (it < opts.max_iter && !close(lo, hi)) {
        ++it;
        const double mid = 0.5 * (lo + hi);
        const double r_mid = residual(mid);
        if (r_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(r_mid) == std::signbit(r_lo)) {
          lo = mid;
          r_lo = r_mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      if (!close(lo, hi)) {
        throw NonConvergence(root, std::abs(residual(root)), it);
      }
      return {root, it, std::abs(residual(root))};
    }

    if (close(q, next)) return {next, it, std::abs(r_next)};
    q = next;
    r = r_next;
  }
  throw NonConvergence(q, std::abs(r), opts.max_iter);
}

WorkingPoint solve_self_consistent(const DerivedParams& d,
                                   const PhysicalParams& p, double delta0,
                                   const FixedPointOptions& opts) {
  const DisplacementSolution sol = solve_displacement(d, p, delta0, opts);
  return solve_direct(d, p, delta0 - d.g0 * sol.q);
}

double delta0_for(const DerivedParams& d, const PhysicalParams& p,
                  double target_delta_eff) {
  return target_delta_eff + d.g0 * solve_direct(d, p, target_delta_eff).q;
}

double resolve_delta_eff(const DerivedParams& d, const PhysicalParams& p,
                         const FixedPointOptions& opts) {
  if (p.pump1_detuning.mode == DetuningMode::effective) {
    return p.pump1_detuning.value;
  }
  return solve_self_consistent(d, p, p.pump1_detuning.value, opts).delta_eff;
}

}  // namespace optomech
