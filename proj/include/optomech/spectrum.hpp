#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "optomech/dynamics.hpp"
#include "optomech/modes.hpp"

namespace optomech {

enum class Sign { plus, minus };

constexpr Sign opposite(Sign s) noexcept {
  return s == Sign::plus ? Sign::minus : Sign::plus;
}
constexpr char to_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

/// `entangled` requires V < 2 - kSeparabilityGuard so that vacuum, which sits
/// exactly on the bound, is not flagged through round-off.
inline constexpr double kSeparabilityGuard = 1e-12;

/// Duan correlation V = <δU δU† + δV δV†> with δU = X_i ± X_j and
/// δV = Y_i ∓ Y_j. V < 2 is sufficient for bipartite entanglement.
struct DuanCorrelation {
  Mode i;
  Mode j;
  Sign sign_u = Sign::plus;
  Sign sign_v = Sign::minus;
  double value = 0.0;
  bool entangled = false;  // value < 2 - kSeparabilityGuard
};

/// Output-field spectral matrix over the 2(n+2) optical output quadratures,
/// vacuum-normalized so an undisturbed vacuum has diagonal 1/2.
struct SpectralResult {
  double omega = 0.0;
  Eigen::MatrixXcd s_out;
  ModeIndex index;
  bool unstable = false;  // drift matrix not stable: spectrum is unphysical
  std::vector<DuanCorrelation> pair_correlations;
};

/// Output transfer matrix T(ω) = F_opt (-iωI - M)^-1 F - P_opt, mapping all
/// input noise channels to optical output quadratures. Fourier convention
/// x(ω) = ∫ x(t) e^{iωt} dt.
Eigen::MatrixXcd output_transfer(const LinearSystem& ls, double omega);

/// s_out = T(ω) D T(ω)†. Throws SingularAtFrequency when -iωI - M is
/// singular. Does not refuse unstable systems; sets `unstable` instead.
SpectralResult output_spectral_matrix(const LinearSystem& ls,
                                      const NoiseModel& nm, double omega);

/// Throws std::invalid_argument for i == j or a mirror mode.
DuanCorrelation duan_correlation(const SpectralResult& sr, Mode i, Mode j,
                                 Sign sign_u);

/// The smaller V of the two sign choices; ties go to sign_u = +.
DuanCorrelation duan_best(const SpectralResult& sr, Mode i, Mode j);

struct MultipartiteReport {
  std::vector<DuanCorrelation> pairs;
  bool all_entangled = false;
  /// Every pairwise V below 2 at once. Sufficient for pairwise inseparability
  /// only; this is not a genuine-multipartite entanglement witness.
  static constexpr std::string_view notion =
      "operational: all pairwise Duan correlations < 2 (not a genuine "
      "multipartite witness)";
};

MultipartiteReport multipartite_verdict(const SpectralResult& sr,
                                        const std::vector<Mode>& parties);

}  // namespace optomech
