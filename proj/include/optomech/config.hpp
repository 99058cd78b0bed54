#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "optomech/sweep.hpp"

namespace optomech {

/// Monte-Carlo settings for `verify`. Window and burn-in are in units of the
/// slowest decay time 1/|max Re λ|.
struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned trajectories = 8;
  std::size_t windows = 2000;
  double window_tau = 200.0;
  double burn_in_tau = 20.0;
  std::size_t steps_per_window = 100;
  double quadrature_rel_tol = 1e-12;
};

/// A parsed configuration document.
struct RunConfig {
  PhysicalParams params;
  MirrorCoupling coupling = MirrorCoupling::per_mode;
  std::vector<PairSpec> pairs;  // default_pairs() when the document has none
  std::vector<Axis> sweep_axes;  // empty when there is no sweep section
  VerifyOptions verify;

  SweepSpec sweep_spec() const;
};

inline constexpr int kConfigSchemaVersion = 1;

/// JSON document, schema version 1. Frequencies and rates are given in Hz
/// and stored as rad/s. Unknown keys are rejected. Throws ConfigError whose
/// path() is a JSON pointer to the offending field.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; an unreadable file is a ConfigError at "".
RunConfig load_config(const std::string& path);

}  // namespace optomech
