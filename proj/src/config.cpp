#include "optomech/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "optomech/constants.hpp"
#include "optomech/errors.hpp"

namespace optomech {

namespace {

using nlohmann::json;

std::string child_path(const std::string& parent, std::string_view key) {
  std::string out = parent + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

/// Field reader over one JSON object that rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  bool has(std::string_view key) {
    allowed_.insert(std::string(key));
    return j_.contains(std::string(key));
  }

  const json& raw(std::string_view key) {
    if (!has(key)) throw ConfigError(path(key), "missing required field");
    return j_.at(std::string(key));
  }

  std::string path(std::string_view key) const { return child_path(path_, key); }

  double number(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path(key), "expected a finite number");
    return d;
  }

  double number(std::string_view key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  double nonnegative(std::string_view key) {
    const double d = number(key);
    if (d < 0.0) throw ConfigError(path(key), "must be >= 0");
    return d;
  }

  double positive(std::string_view key) {
    const double d = number(key);
    if (!(d > 0.0)) throw ConfigError(path(key), "must be > 0");
    return d;
  }

  std::uint64_t count(std::string_view key, std::uint64_t fallback,
                      std::uint64_t min = 0) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError(path(key), "expected a nonnegative integer");
    }
    const auto n = v.get<std::uint64_t>();
    if (n < min) {
      throw ConfigError(path(key), "must be >= " + std::to_string(min));
    }
    return n;
  }

  std::string text(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  std::string text(std::string_view key, std::string fallback) {
    return has(key) ? text(key) : fallback;
  }

  Section object(std::string_view key) { return Section(raw(key), path(key)); }

  const json& array(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array");
    return v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!allowed_.count(it.key())) {
        throw ConfigError(child_path(path_, it.key()), "unknown field");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> allowed_;
};

DetuningMode detuning_mode(Section& s, std::string_view key, DetuningMode fallback) {
  if (!s.has(key)) return fallback;
  const std::string v = s.text(key);
  if (v == "effective") return DetuningMode::effective;
  if (v == "bare") return DetuningMode::bare;
  throw ConfigError(s.path(key), "expected \"effective\" or \"bare\"");
}

Mode mode_field(Section& s, std::string_view key) {
  const std::string v = s.text(key);
  try {
    return Mode::parse(v);
  } catch (const std::exception&) {
    throw ConfigError(s.path(key), "expected a mode label (0m, 0p, 1..n)");
  }
}

}  // namespace

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec spec;
  spec.base = params;
  spec.axes = sweep_axes;
  spec.pairs = pairs;
  spec.omega = params.fourier_freq;
  spec.coupling = coupling;
  return spec;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  Section root(doc, "");
  const json& version = root.raw("schema_version");
  if (!version.is_number_integer() || version.get<long long>() != kConfigSchemaVersion) {
    throw ConfigError("/schema_version",
                      "unsupported schema version (expected " +
                          std::to_string(kConfigSchemaVersion) + ")");
  }

  RunConfig cfg;
  PhysicalParams& p = cfg.params;

  Section cavity = root.object("cavity");
  p.cavity_length_m = cavity.positive("length_m");
  p.cavity_decay = kTwoPi * cavity.positive("decay_hz");
  cavity.finish();

  Section mirror = root.object("mirror");
  p.mirror_mass_kg = mirror.positive("mass_kg");
  p.mech_freq = kTwoPi * mirror.positive("frequency_hz");
  p.mech_damping = kTwoPi * mirror.positive("damping_hz");
  p.temperature_K = mirror.nonnegative("temperature_k");
  mirror.finish();

  Section pumps = root.object("pumps");
  p.wavelength_m = pumps.positive("wavelength_m");
  p.pump1_power_W = pumps.nonnegative("power1_w");
  p.pump2_power_W = pumps.nonnegative("power2_w");
  p.pump_separation = kTwoPi * pumps.number("separation_hz");
  p.relative_phase = pumps.number("relative_phase_rad", 0.0);
  {
    Section det = pumps.object("detuning");
    p.pump1_detuning.mode = detuning_mode(det, "mode", DetuningMode::effective);
    p.pump1_detuning.value = kTwoPi * det.number("value_hz");
    det.finish();
  }
  pumps.finish();

  if (root.has("probes")) {
    const json& probes = root.array("probes");
    for (std::size_t k = 0; k < probes.size(); ++k) {
      Section probe(probes[k], root.path("probes") + "/" + std::to_string(k));
      p.probe_powers_W.push_back(probe.nonnegative("power_w"));
      p.probe_detunings.push_back(kTwoPi * probe.number("detuning_hz"));
      probe.finish();
    }
  }
  p.detuning_interpretation =
      detuning_mode(root, "probe_detuning_interpretation", DetuningMode::effective);
  p.fourier_freq = kTwoPi * root.number("fourier_frequency_hz", 0.0);

  if (root.has("model")) {
    Section model = root.object("model");
    const std::string c = model.text("mirror_coupling", "per_mode");
    if (c == "per_mode") cfg.coupling = MirrorCoupling::per_mode;
    else if (c == "uniform_g0") cfg.coupling = MirrorCoupling::uniform_g0;
    else throw ConfigError(model.path("mirror_coupling"), "expected \"per_mode\" or \"uniform_g0\"");
    model.finish();
  }

  const ModeIndex index(p.probe_count());
  if (root.has("pairs")) {
    const json& pairs = root.array("pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Section pair(pairs[k], root.path("pairs") + "/" + std::to_string(k));
      PairSpec spec{mode_field(pair, "i"), mode_field(pair, "j"), {}};
      for (const Mode m : {spec.i, spec.j}) {
        if (!m.is_optical() || (m.kind == Mode::Kind::probe && m.probe > index.probes())) {
          throw ConfigError(pair.path(m == spec.i ? "i" : "j"),
                            "not an optical mode of this configuration");
        }
      }
      if (spec.i == spec.j) throw ConfigError(pair.path("j"), "pair needs two distinct modes");
      const std::string sign = pair.text("sign", "auto");
      if (sign == "+") spec.sign_u = Sign::plus;
      else if (sign == "-") spec.sign_u = Sign::minus;
      else if (sign != "auto") throw ConfigError(pair.path("sign"), "expected \"+\", \"-\" or \"auto\"");
      pair.finish();
      cfg.pairs.push_back(spec);
    }
  } else {
    cfg.pairs = default_pairs(p.probe_count());
  }

  if (root.has("sweep")) {
    Section sweep = root.object("sweep");
    const json& axes = sweep.array("axes");
    const std::string axes_path = sweep.path("axes");
    if (axes.empty() || axes.size() > 2) throw ConfigError(axes_path, "expected 1 or 2 axes");
    for (std::size_t k = 0; k < axes.size(); ++k) {
      Section ax(axes[k], axes_path + "/" + std::to_string(k));
      Axis axis;
      try {
        axis.kind = parse_axis_kind(ax.text("name"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(ax.path("name"), e.what());
      }
      axis.min = ax.number("min");
      axis.max = ax.number("max");
      if (!ax.has("points")) throw ConfigError(ax.path("points"), "missing required field");
      axis.points = ax.count("points", 0, 2);
      ax.finish();
      if (k == 1 && axis.kind == cfg.sweep_axes[0].kind) {
        throw ConfigError(ax.path("name"), "sweep axes must be distinct");
      }
      cfg.sweep_axes.push_back(axis);
    }
    sweep.finish();
  }

  if (root.has("verify")) {
    Section v = root.object("verify");
    VerifyOptions& o = cfg.verify;
    o.seed = v.count("seed", o.seed);
    o.trajectories = static_cast<unsigned>(v.count("trajectories", o.trajectories, 1));
    o.windows = v.count("windows", o.windows, 2);
    o.window_tau = v.has("window_tau") ? v.positive("window_tau") : o.window_tau;
    o.burn_in_tau = v.has("burn_in_tau") ? v.nonnegative("burn_in_tau") : o.burn_in_tau;
    o.steps_per_window = v.count("steps_per_window", o.steps_per_window, 1);
    o.quadrature_rel_tol =
        v.has("quadrature_rel_tol") ? v.positive("quadrature_rel_tol") : o.quadrature_rel_tol;
    v.finish();
  }

  root.finish();

  try {
    validate(p);
  } catch (const ParameterError& e) {
    throw ConfigError("", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace optomech
