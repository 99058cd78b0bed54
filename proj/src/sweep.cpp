#include "optomech/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <stdexcept>

#include "optomech/errors.hpp"
#include "optomech/parallel.hpp"

namespace optomech {

namespace {

constexpr std::string_view kAxisNames[] = {"delta_eff", "pump_ratio", "phase",
                                           "temperature", "decay"};

std::string_view axis_label(AxisKind k) {
  switch (k) {
    case AxisKind::delta_eff: return "Delta_eff / omega_m";
    case AxisKind::pump_ratio: return "R = P_l2 / P_l1";
    case AxisKind::phase: return "phi (rad)";
    case AxisKind::temperature: return "T (K)";
    case AxisKind::decay: return "kappa / kappa_0";
  }
  return "";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SweepRow evaluate_row(const SweepSpec& spec, const std::vector<double>& at) {
  SweepRow row;
  row.axis_values = at;
  try {
    PhysicalParams p = spec.base;
    std::optional<double> delta_eff;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const double v = at[a];
      switch (spec.axes[a].kind) {
        case AxisKind::delta_eff: delta_eff = v * p.mech_freq; break;
        case AxisKind::pump_ratio: p.pump2_power_W = v * p.pump1_power_W; break;
        case AxisKind::phase: p.relative_phase = v; break;
        case AxisKind::temperature: p.temperature_K = v; break;
        case AxisKind::decay: p.cavity_decay = v * spec.base.cavity_decay; break;
      }
    }
    if (!delta_eff) delta_eff = resolve_delta_eff(derive_params(p), p);
    const PointResult r =
        evaluate_point(p, *delta_eff, spec.pairs, spec.omega, spec.coupling);
    row.evaluated = true;
    row.stable = r.stability.stable;
    row.delta0 = r.delta0;
    row.q = r.working_point.q;
    row.warnings = r.warnings;
    if (row.stable) {
      row.correlations.assign(r.correlations.begin(), r.correlations.end());
    } else {
      row.correlations.assign(spec.pairs.size(), std::nullopt);
    }
  } catch (const std::exception& e) {
    row.evaluated = false;
    row.error = e.what();
    row.correlations.assign(spec.pairs.size(), std::nullopt);
  }
  return row;
}

}  // namespace

std::string_view to_string(AxisKind k) noexcept {
  return kAxisNames[static_cast<int>(k)];
}

AxisKind parse_axis_kind(std::string_view name) {
  for (int k = 0; k < 5; ++k) {
    if (kAxisNames[k] == name) return static_cast<AxisKind>(k);
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected delta_eff, pump_ratio, phase, "
                              "temperature or decay)");
}

std::vector<double> Axis::values() const {
  std::vector<double> v(points);
  const double step = (max - min) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    v[k] = min + step * static_cast<double>(k);
  }
  if (points > 1) v.back() = max;
  return v;
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ParameterError("a sweep needs one or two axes");
  }
  if (spec.axes.size() == 2 && spec.axes[0].kind == spec.axes[1].kind) {
    throw ParameterError("sweep axes must be distinct");
  }
  for (const auto& a : spec.axes) {
    if (a.points < 2) {
      throw ParameterError("sweep axis '" + std::string(to_string(a.kind)) +
                           "' needs at least 2 points");
    }
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) {
      throw ParameterError("sweep axis bounds must be finite");
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  validate(spec.base);
  const std::vector<double> first = spec.axes[0].values();
  const std::vector<double> second =
      spec.axes.size() == 2 ? spec.axes[1].values() : std::vector<double>{};
  const std::size_t inner = second.empty() ? 1 : second.size();
  const std::size_t total = first.size() * inner;

  std::vector<SweepRow> rows(total);
  parallel_for(total, worker_count(spec.threads), [&](std::size_t k) {
    std::vector<double> at{first[k / inner]};
    if (!second.empty()) at.push_back(second[k % inner]);
    rows[k] = evaluate_row(spec, at);
  });
  return rows;
}

std::string pair_column(const PairSpec& pair) {
  return "V_" + pair.i.label() + "_" + pair.j.label();
}

void write_csv(std::ostream& os, const SweepSpec& spec,
               const std::vector<SweepRow>& rows, const CsvOptions& opts) {
  if (opts.header_meta) {
    os << "# optomech sweep generated " << utc_timestamp() << '\n';
  }
  os << "axis1,axis2,stable,delta0,q";
  for (const auto& pair : spec.pairs) {
    const std::string v = pair_column(pair);
    os << ',' << csv_field(v) << ",sign" << csv_field(v.substr(1));
  }
  os << ",warnings\n";

  for (const auto& row : rows) {
    os << format_double(row.axis_values[0]) << ',';
    if (row.axis_values.size() > 1) os << format_double(row.axis_values[1]);
    if (!row.evaluated) {
      os << ",,,";
    } else {
      os << ',' << (row.stable ? "true" : "false") << ','
         << format_double(row.delta0) << ',' << format_double(row.q);
    }
    for (const auto& c : row.correlations) {
      if (c) {
        os << ',' << format_double(c->value) << ',' << to_char(c->sign_u);
      } else {
        os << ",,";
      }
    }
    std::string warnings;
    for (const auto w : row.warnings) {
      if (!warnings.empty()) warnings += ';';
      warnings += to_string(w);
    }
    if (!row.evaluated) {
      if (!warnings.empty()) warnings += ';';
      warnings += "error: " + row.error;
    }
    os << ',' << csv_field(warnings) << '\n';
  }
}

void write_plot_script(std::ostream& os, const SweepSpec& spec,
                       const std::string& csv_path) {
  std::string quoted = "'";
  for (char c : csv_path) {
    if (c == '\'') quoted += '\'';
    quoted += c;
  }
  quoted += '\'';

  os << "# gnuplot script for " << csv_path << "\n"
     << "set datafile separator ','\n"
     << "set xlabel '" << axis_label(spec.axes[0].kind) << "'\n";
  // Data columns: 1 axis1, 2 axis2, 3 stable, 4 delta0, 5 q, then V/sign pairs.
  if (spec.axes.size() == 1) {
    os << "set ylabel 'V'\n"
       << "set key outside right\n"
       << "set arrow from graph 0, first 2 to graph 1, first 2 nohead dashtype 2\n"
       << "plot ";
    for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
      if (p) os << ", \\\n     ";
      os << quoted << " using 1:" << 6 + 2 * p << " with lines title '"
         << pair_column(spec.pairs[p]) << "'";
    }
    os << "\n";
  } else {
    os << "set ylabel '" << axis_label(spec.axes[1].kind) << "'\n"
       << "set view map\n"
       << "set cblabel 'V'\n";
    for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
      if (p) os << "pause -1 'next'\n";
      os << "set title '" << pair_column(spec.pairs[p]) << "'\n"
         << "splot " << quoted << " using 1:2:" << 6 + 2 * p
         << " with points pointtype 5 palette notitle\n";
    }
  }
}

}  // namespace optomech
