#include "optomech/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "optomech/config.hpp"
#include "optomech/errors.hpp"
#include "optomech/lyapunov.hpp"
#include "optomech/matrix_io.hpp"
#include "optomech/spectral_integral.hpp"
#include "optomech/time_domain.hpp"

namespace optomech {

namespace {

constexpr double kOracleRelTol = 1e-6;  // Lyapunov vs. spectral integral
constexpr double kOracleSigmas = 3.0;   // Monte-Carlo vs. frequency domain

std::string fmt(double v, int digits = 10) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void print_line(std::ostream& out, std::string_view key, const std::string& value) {
  out << key;
  for (std::size_t k = key.size(); k < 18; ++k) out << ' ';
  out << value << '\n';
}

void print_warnings(std::ostream& out, const std::vector<ParamWarning>& warnings) {
  for (const auto w : warnings) out << "warning: " << to_string(w) << '\n';
}

void print_stability(std::ostream& out, const StabilityReport& s) {
  print_line(out, "stable", s.stable ? "true" : "false");
  print_line(out, "max_re_eigenvalue", fmt(s.max_real_eig) + " s^-1");
  print_line(out, "stability_margin", fmt(s.margin) + " s^-1");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content) || !f.flush()) {
    throw ConfigError("", "cannot write '" + path + "'");
  }
}

struct Common {
  std::string config;
  std::string dump_dir;
};

PointResult evaluate(const RunConfig& cfg, const Common& common) {
  PointResult r = evaluate_point(cfg.params, cfg.pairs, cfg.coupling);
  if (!common.dump_dir.empty()) {
    try {
      dump_system(common.dump_dir, r.system, r.noise);
    } catch (const Error& e) {
      throw ConfigError("", e.what());
    }
  }
  return r;
}

int run_derive(const Common& c, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  const PhysicalParams& p = cfg.params;
  const DerivedParams d = derive_params(p);
  print_warnings(out, validate(p));
  print_line(out, "omega_laser1", fmt(d.omega_laser1, 17) + " rad/s");
  print_line(out, "g0", fmt(d.g0, 17) + " rad/s");
  for (std::size_t j = 0; j < d.g_probe.size(); ++j) {
    print_line(out, "g_" + std::to_string(j + 1), fmt(d.g_probe[j], 17) + " rad/s");
  }
  print_line(out, "eta_l1", fmt(d.eta_l1, 17) + " s^-1");
  print_line(out, "eta_l2", fmt(d.eta_l2, 17) + " s^-1");
  for (std::size_t j = 0; j < d.eta_probe.size(); ++j) {
    print_line(out, "eta_p" + std::to_string(j + 1), fmt(d.eta_probe[j], 17) + " s^-1");
  }
  print_line(out, "n_thermal", fmt(d.n_thermal, 17));
  print_line(out, "q_m", fmt(d.q_m, 17));
  return kExitOk;
}

int run_point(const Common& c, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  const PointResult r = evaluate(cfg, c);
  const double wm = cfg.params.mech_freq;
  print_warnings(out, r.warnings);
  const WorkingPoint& wp = r.working_point;
  print_line(out, "delta_eff", fmt(wp.delta_eff) + " rad/s (" + fmt(wp.delta_eff / wm) + " omega_m)");
  print_line(out, "delta0", fmt(r.delta0) + " rad/s (" + fmt(r.delta0 / wm) + " omega_m)");
  print_line(out, "q", fmt(wp.q));
  print_line(out, "alpha_0m", fmt(wp.alpha_0minus));
  print_line(out, "alpha_0p", fmt(wp.alpha_0plus.real()) + " + " + fmt(wp.alpha_0plus.imag()) + "i");
  for (std::size_t j = 0; j < wp.alpha_probe.size(); ++j) {
    print_line(out, "alpha_" + std::to_string(j + 1), fmt(wp.alpha_probe[j]));
  }
  print_line(out, "omega", fmt(cfg.params.fourier_freq) + " rad/s");
  print_stability(out, r.stability);
  if (!r.stability.stable) {
    out << "correlations: undefined (unstable working point)\n";
    return kExitOk;
  }
  out << "pair    sign  V                  entangled\n";
  for (const auto& corr : r.correlations) {
    std::string pair = corr.i.label() + "-" + corr.j.label();
    pair.resize(std::max<std::size_t>(pair.size(), 8), ' ');
    std::string v = fmt(corr.value, 15);
    v.resize(std::max<std::size_t>(v.size(), 19), ' ');
    out << pair << to_char(corr.sign_u) << "     " << v
        << (corr.entangled ? "true" : "false") << '\n';
  }
  if (r.correlations.size() > 1) {
    bool all = std::all_of(r.correlations.begin(), r.correlations.end(),
                           [](const DuanCorrelation& d) { return d.entangled; });
    print_line(out, "all_pairs_below_2", all ? "true" : "false");
  }
  return kExitOk;
}

int run_stability(const Common& c, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  const PointResult r = evaluate(cfg, c);
  print_warnings(out, r.warnings);
  print_stability(out, r.stability);
  std::vector<std::complex<double>> eig(r.stability.eigenvalues.begin(),
                                        r.stability.eigenvalues.end());
  std::sort(eig.begin(), eig.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  out << "eigenvalues (re, im) s^-1\n";
  for (const auto& e : eig) out << fmt(e.real(), 17) << ' ' << fmt(e.imag(), 17) << '\n';
  return kExitOk;
}

struct SweepFlags {
  std::string out;
  std::string plot_script;
  bool no_header_meta = false;
};

int run_sweep_cmd(const Common& c, const SweepFlags& f, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  if (cfg.sweep_axes.empty()) throw ConfigError("/sweep", "missing required section");
  const SweepSpec spec = cfg.sweep_spec();
  const std::vector<SweepRow> rows = run_sweep(spec);
  std::ostringstream csv;
  write_csv(csv, spec, rows, {.header_meta = !f.no_header_meta});
  if (f.out.empty()) {
    out << csv.str();
  } else {
    write_file(f.out, csv.str());
  }
  if (!f.plot_script.empty()) {
    std::ostringstream script;
    write_plot_script(script, spec, f.out.empty() ? "sweep.csv" : f.out);
    write_file(f.plot_script, script.str());
  }
  return kExitOk;
}

int run_verify(const Common& c, std::optional<std::uint64_t> seed, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  const PointResult r = evaluate(cfg, c);
  print_warnings(out, r.warnings);
  if (!r.stability.stable) {
    throw UnstableSystem("verify needs a stable working point");
  }
  bool agree = true;

  const LyapunovSolution lyap = lyapunov_covariance(r.system, r.noise);
  const SpectralIntegral integral = integrate_intracavity_spectrum(
      r.system, r.noise, cfg.verify.quadrature_rel_tol);
  const double rel = max_entrywise_relative_error(lyap.covariance, integral.covariance);
  const bool cov_ok = rel <= kOracleRelTol;
  agree = agree && cov_ok;
  out << "covariance: lyapunov vs spectral integral\n";
  print_line(out, "  lyapunov_resid", fmt(lyap.residual, 3));
  print_line(out, "  evaluations", std::to_string(integral.evaluations));
  print_line(out, "  max_rel_error", fmt(rel, 3) + " (tol " + fmt(kOracleRelTol, 3) + ")");
  print_line(out, "  agree", cov_ok ? "true" : "false");

  const VerifyOptions& v = cfg.verify;
  const double tau = 1.0 / std::abs(r.stability.max_real_eig);
  TrajectoryOptions opts;
  opts.seed = seed.value_or(v.seed);
  opts.trajectories = v.trajectories;
  opts.window = v.window_tau * tau;
  opts.dt = opts.window / static_cast<double>(v.steps_per_window);
  opts.burn_in = v.burn_in_tau * tau;
  opts.duration = static_cast<double>(v.windows) * opts.window;
  std::vector<PairRequest> requests;
  for (const auto& corr : r.correlations) requests.push_back({corr.i, corr.j, corr.sign_u});
  const TrajectoryStats stats = simulate_time_domain(r.system, r.noise, requests, opts);

  out << "duan V at omega = 0: frequency domain vs monte carlo\n";
  print_line(out, "  seed", std::to_string(stats.seed));
  print_line(out, "  windows", std::to_string(stats.windows) + " x " + fmt(stats.window, 6) + " s");
  if (cfg.params.fourier_freq != 0.0) {
    out << "  note: the monte carlo estimate is at omega = 0; comparing against omega = 0\n";
  }
  const SpectralResult at_zero = output_spectral_matrix(r.system, r.noise, 0.0);
  out << "  pair    sign  V_freq           V_mc             std_err      z\n";
  for (const auto& e : stats.estimates) {
    const double vf = duan_correlation(at_zero, e.pair.i, e.pair.j, e.pair.sign_u).value;
    const double z = std::abs(e.value - vf) / e.standard_error;
    const bool ok = z <= kOracleSigmas;
    agree = agree && ok;
    std::string pair = e.pair.i.label() + "-" + e.pair.j.label();
    pair.resize(std::max<std::size_t>(pair.size(), 8), ' ');
    auto col = [](std::string s, std::size_t w) {
      s.resize(std::max(s.size(), w), ' ');
      return s;
    };
    out << "  " << pair << to_char(e.pair.sign_u) << "     " << col(fmt(vf), 17)
        << col(fmt(e.value), 17) << col(fmt(e.standard_error, 4), 13) << fmt(z, 3)
        << (ok ? "" : "  DISAGREE") << '\n';
  }
  print_line(out, "agree", agree ? "true" : "false");
  return agree ? kExitOk : kExitNumerical;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of output fields in a multi-driven optomechanical cavity"};
  app.name("optomech");
  app.require_subcommand(1);

  Common common;
  SweepFlags sweep_flags;
  std::optional<std::uint64_t> seed;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON configuration file")->required();
  };
  auto add_dump = [&](CLI::App* sub) {
    sub->add_option("--dump-matrices", common.dump_dir,
                    "write drift.txt, input_gain.txt and noise.txt into this directory");
  };

  CLI::App* derive = app.add_subcommand("derive", "print derived model coefficients");
  add_config(derive);
  CLI::App* point = app.add_subcommand("point", "working point, stability and Duan correlations");
  add_config(point);
  add_dump(point);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  add_config(sweep);
  sweep->add_option("--out", sweep_flags.out, "CSV output file (default: stdout)");
  sweep->add_option("--plot-script", sweep_flags.plot_script, "write a gnuplot script for the CSV");
  sweep->add_flag("--no-header-meta", sweep_flags.no_header_meta,
                  "omit the timestamp comment line from the CSV");
  CLI::App* stability = app.add_subcommand("stability", "drift-matrix eigenvalue report");
  add_config(stability);
  add_dump(stability);
  CLI::App* verify = app.add_subcommand("verify", "cross-check the spectrum against independent oracles");
  add_config(verify);
  add_dump(verify);
  verify->add_option("--seed", seed, "Monte-Carlo seed (overrides the config)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (derive->parsed()) return run_derive(common, out);
    if (point->parsed()) return run_point(common, out);
    if (sweep->parsed()) return run_sweep_cmd(common, sweep_flags, out);
    if (stability->parsed()) return run_stability(common, out);
    if (verify->parsed()) return run_verify(common, seed, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace optomech
