#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optomech/pipeline.hpp"

namespace optomech {

enum class AxisKind {
  delta_eff,    // Δ_eff / ω_m
  pump_ratio,   // R = P_l2 / P_l1, P_l1 held fixed
  phase,        // φ, rad
  temperature,  // K
  decay,        // κ / κ of the base parameters
};

std::string_view to_string(AxisKind k) noexcept;
/// Inverse of to_string; throws std::invalid_argument.
AxisKind parse_axis_kind(std::string_view name);

/// Linearly spaced grid, endpoints included.
struct Axis {
  AxisKind kind = AxisKind::delta_eff;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 2;

  std::vector<double> values() const;
};

struct SweepSpec {
  PhysicalParams base;
  std::vector<Axis> axes;  // 1 or 2, distinct kinds
  std::vector<PairSpec> pairs;
  double omega = 0.0;      // rad/s
  MirrorCoupling coupling = MirrorCoupling::per_mode;
  unsigned threads = 0;    // 0: worker_count()
};

/// Throws ParameterError unless there are 1-2 distinct axes of >= 2 points
/// with finite bounds.
void validate_sweep(const SweepSpec& spec);

struct SweepRow {
  std::vector<double> axis_values;
  bool evaluated = false;  // false: `error` says why
  bool stable = false;
  double delta0 = 0.0;
  double q = 0.0;
  /// One entry per requested pair; empty when the point is unstable.
  std::vector<std::optional<DuanCorrelation>> correlations;
  std::vector<ParamWarning> warnings;
  std::string error;
};

/// Evaluates the grid concurrently and returns rows in row-major order
/// (first axis slowest). Per-point failures are recorded in the row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV column name for a pair value, e.g. "V_0m_0p".
std::string pair_column(const PairSpec& pair);

struct CsvOptions {
  bool header_meta = true;  // leading "# ..." line with a UTC timestamp
};

/// Columns: axis1,axis2,stable,delta0,q, then V_<i>_<j>,sign_<i>_<j> per
/// pair, then warnings. Floats use 17 significant digits; axis2 is empty
/// for one-axis sweeps; V and sign are empty where the point is unstable.
void write_csv(std::ostream& os, const SweepSpec& spec,
               const std::vector<SweepRow>& rows, const CsvOptions& opts = {});

/// gnuplot script plotting every V column of `csv_path` against the axes,
/// with the V = 2 separability bound marked.
void write_plot_script(std::ostream& os, const SweepSpec& spec,
                       const std::string& csv_path);

}  // namespace optomech
