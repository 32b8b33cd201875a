#include "sid/cli/app.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sid/cli/experiments.hpp"
#include "sid/error.hpp"
#include "sid/field_io.hpp"

namespace sid::cli {

namespace {

struct FlagKey {
  const char* flag;
  const char* key;
  const char* help;
};

const FlagKey kFlags[] = {
    {"--lambda", "coefficients.lambda", "nonlinearity sign (+1 or -1)"},
    {"--d", "grid.d", "spatial dimension"},
    {"--n", "grid.n", "grid points per axis (power of two)"},
    {"--L", "grid.half_width", "box half width L"},
    {"--preset", "data.preset", "gaussian | bump | multiscale | plane_wave"},
    {"--slot", "data.slot", "position | velocity"},
    {"--width", "data.width", "preset width"},
    {"--amplitude", "data.amplitude", "preset amplitude"},
    {"--epsilon", "data.epsilon", "nlkg data scale"},
    {"--tmax", "schedule.t_max", "final time"},
    {"--samples", "schedule.samples", "number of time (or tau/xi) samples"},
    {"--fit-tmin", "schedule.fit_t_min", "fit window start"},
    {"--fit-tmax", "schedule.fit_t_max", "fit window end"},
    {"--dt", "schedule.dt", "nlkg time step"},
    {"--method", "nlkg.method", "kernel_stepping | picard | wave_splitting"},
    {"--padding", "nlkg.padding", "none | two_times"},
    {"--picard-iterations", "nlkg.picard_iterations", "Picard iteration cap"},
    {"--output-dir", "run.output_dir", "output directory"},
    {"--workers", "run.workers", "worker threads (0: all cores)"},
    {"--seed", "run.seed", "seed recorded in the manifest"},
};

struct Options {
  std::string config;
  std::string experiment;
  std::vector<std::string> sets;
  std::optional<std::string> mu, mu1, mu2;
  std::map<std::string, std::string> flags;  // key → value
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "INI config file")->check(CLI::ExistingFile);
  sub->add_option("--set", o.sets, "override section.key=value (repeatable)");
  sub->add_option("--mu", o.mu, "effective mass mu (direct, or the target with --mu1)");
  sub->add_option("--mu1", o.mu1, "damping coefficient mu1");
  sub->add_option("--mu2", o.mu2, "mass coefficient mu2");
  for (const FlagKey& f : kFlags)
    sub->add_option_function<std::string>(f.flag, [&o, key = std::string(f.key)](const std::string& v) {
      o.flags[key] = v;
    }, f.help);
}

ExperimentConfig build_config(const Options& o, std::optional<Experiment> fixed) {
  std::optional<Experiment> named;
  if (!o.experiment.empty()) named = parse_experiment(o.experiment);
  if (fixed && named && *fixed != *named)
    throw Error(ErrorKind::invalid_config, "--experiment does not match the subcommand");
  if (fixed) named = fixed;
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config, named.value_or(Experiment::scatter));
    if (named && cfg.experiment != *named)
      throw Error(ErrorKind::invalid_config, std::string("config file is for experiment '") +
                                                 to_string(cfg.experiment) + "', not '" + to_string(*named) + "'");
  } else {
    if (!named) throw Error(ErrorKind::invalid_config, "no experiment given (use --experiment or --config)");
    cfg = defaults_for(*named);
  }
  if (o.mu1 || o.mu2) {
    if (o.mu1) apply_setting(cfg, "coefficients.mu1", *o.mu1);
    if (o.mu2) apply_setting(cfg, "coefficients.mu2", *o.mu2);
    if (o.mu) {
      if (o.mu2) throw Error(ErrorKind::invalid_config, "give at most two of --mu, --mu1, --mu2");
      apply_setting(cfg, "coefficients.mu", *o.mu);
      apply_setting(cfg, "coefficients.mode", "tuned");
    } else {
      apply_setting(cfg, "coefficients.mode", "damped");
    }
  } else if (o.mu) {
    apply_setting(cfg, "coefficients.mu", *o.mu);
    if (cfg.mode != CoefficientMode::tuned) apply_setting(cfg, "coefficients.mode", "direct");
  }
  for (const auto& [key, value] : o.flags) apply_setting(cfg, key, value);
  for (const std::string& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::invalid_config, "--set expects key=value, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(std::ostream& err, const char* kind, const std::string& detail) {
  err << "error kind=" << kind << " detail=" << one_line(detail) << '\n';
  return exit_code_for(kind);
}

int execute(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec = run_experiment(cfg);
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.workers = omp_get_max_threads();
  write_manifest(rec);
  out << "experiment=" << to_string(cfg.experiment) << " output_dir=" << cfg.output_dir;
  for (const Metric& m : rec.metrics) out << ' ' << m.name << '=' << format_double(m.value);
  out << '\n';
  return 0;
}

}  // namespace

int exit_code_for(const char* kind) {
  const std::string k = kind;
  if (k == "invalid_config" || k == "out_of_range") return 2;
  if (k == "horizon_violation") return 3;
  if (k == "divergence" || k == "numerical") return 4;
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale-invariant damped wave / Klein-Gordon laboratory", "sidlab"};
  app.require_subcommand(1);
  Options opt;
  std::optional<Experiment> fixed;
  bool print_only = false;

  for (Experiment e : {Experiment::bessel_check, Experiment::kernel_check, Experiment::scatter,
                       Experiment::dw_scatter, Experiment::nlkg, Experiment::growth}) {
    CLI::App* sub = app.add_subcommand(to_string(e), std::string("run the ") + to_string(e) + " experiment");
    add_common(sub, opt);
    sub->callback([&fixed, e] { fixed = e; });
  }
  CLI::App* run = app.add_subcommand("run", "run the experiment named by --experiment or the config file");
  add_common(run, opt);
  run->add_option("--experiment", opt.experiment, "experiment name");
  CLI::App* defaults = app.add_subcommand("print-defaults", "print the fully specified config as INI");
  add_common(defaults, opt);
  defaults->add_option("--experiment", opt.experiment, "experiment name");
  defaults->callback([&print_only] { print_only = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, "invalid_config", e.what());
  }

  try {
    const ExperimentConfig cfg = build_config(opt, fixed);
    if (print_only) {
      out << to_ini(cfg);
      return 0;
    }
    return execute(cfg, out);
  } catch (const Error& e) {
    return fail(err, to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(err, "internal", e.what());
  }
}

}  // namespace sid::cli
