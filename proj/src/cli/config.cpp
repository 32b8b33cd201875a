#include "sid/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <functional>
#include <sstream>
#include <vector>

#include "sid/error.hpp"
#include "sid/field_io.hpp"

namespace sid::cli {

namespace {

struct Entry {
  const char* key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::invalid_config, "invalid value '" + value + "' for " + key);
}

double to_double(const std::string& key, const std::string& s) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x)) bad_value(key, s);
  return x;
}

int to_int(const std::string& key, const std::string& s) {
  int x = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || p != end) bad_value(key, s);
  return x;
}

const char* mode_name(CoefficientMode m) {
  switch (m) {
    case CoefficientMode::direct: return "direct";
    case CoefficientMode::damped: return "damped";
    case CoefficientMode::tuned: return "tuned";
  }
  return "direct";
}

#define SID_REAL(name, field)                                              \
  Entry {                                                                  \
    name, [](const ExperimentConfig& c) { return format_double(c.field); }, \
        [](ExperimentConfig& c, const std::string& v) { c.field = to_double(name, v); } \
  }
#define SID_INT(name, field)                                                   \
  Entry {                                                                      \
    name, [](const ExperimentConfig& c) { return std::to_string(c.field); },   \
        [](ExperimentConfig& c, const std::string& v) { c.field = to_int(name, v); } \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"run.experiment", [](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); },
       [](ExperimentConfig& c, const std::string& v) { c.experiment = parse_experiment(v); }},
      {"run.output_dir", [](const ExperimentConfig& c) { return c.output_dir; },
       [](ExperimentConfig& c, const std::string& v) { c.output_dir = v; }},
      SID_INT("run.seed", seed),
      SID_INT("run.workers", workers),
      {"coefficients.mode", [](const ExperimentConfig& c) { return std::string(mode_name(c.mode)); },
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "direct") c.mode = CoefficientMode::direct;
         else if (v == "damped") c.mode = CoefficientMode::damped;
         else if (v == "tuned") c.mode = CoefficientMode::tuned;
         else bad_value("coefficients.mode", v);
       }},
      SID_REAL("coefficients.mu", mu),
      SID_REAL("coefficients.mu1", mu1),
      SID_REAL("coefficients.mu2", mu2),
      SID_INT("coefficients.lambda", lambda),
      SID_INT("grid.d", grid.d),
      SID_INT("grid.n", grid.n),
      SID_REAL("grid.half_width", grid.half_width),
      {"data.preset", [](const ExperimentConfig& c) { return std::string(to_string(c.preset)); },
       [](ExperimentConfig& c, const std::string& v) { c.preset = parse_preset(v); }},
      {"data.slot", [](const ExperimentConfig& c) { return std::string(c.slot == DataSlot::position ? "position" : "velocity"); },
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "position") c.slot = DataSlot::position;
         else if (v == "velocity") c.slot = DataSlot::velocity;
         else bad_value("data.slot", v);
       }},
      SID_REAL("data.amplitude", amplitude),
      SID_REAL("data.width", width),
      SID_INT("data.wavenumber", wavenumber),
      SID_REAL("data.epsilon", epsilon),
      SID_REAL("data.taper", taper),
      SID_REAL("schedule.t_max", t_max),
      SID_INT("schedule.samples", samples),
      SID_REAL("schedule.fit_t_min", fit_t_min),
      SID_REAL("schedule.fit_t_max", fit_t_max),
      SID_REAL("schedule.dt", dt),
      SID_REAL("schedule.tau_min", tau_min),
      SID_REAL("schedule.tau_max", tau_max),
      SID_REAL("schedule.xi_min", xi_min),
      SID_REAL("schedule.xi_max", xi_max),
      {"nlkg.method", [](const ExperimentConfig& c) { return std::string(to_string(c.method)); },
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "kernel_stepping") c.method = NonlinearMethod::kernel_stepping;
         else if (v == "picard") c.method = NonlinearMethod::picard;
         else if (v == "wave_splitting") c.method = NonlinearMethod::wave_splitting;
         else bad_value("nlkg.method", v);
       }},
      {"nlkg.padding", [](const ExperimentConfig& c) { return std::string(to_string(c.padding)); },
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "none") c.padding = Padding::none;
         else if (v == "two_times") c.padding = Padding::two_times;
         else bad_value("nlkg.padding", v);
       }},
      SID_INT("nlkg.picard_iterations", picard_iterations),
      SID_REAL("nlkg.blowup_factor", blowup_factor),
      SID_REAL("tolerances.rate", rate_tolerance),
      SID_REAL("tolerances.oracle", oracle_tolerance),
  };
  return table;
}

#undef SID_REAL
#undef SID_INT

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::bessel_check: return "bessel-check";
    case Experiment::kernel_check: return "kernel-check";
    case Experiment::scatter: return "scatter";
    case Experiment::dw_scatter: return "dw-scatter";
    case Experiment::nlkg: return "nlkg";
    case Experiment::growth: return "growth";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::bessel_check, Experiment::kernel_check, Experiment::scatter,
                       Experiment::dw_scatter, Experiment::nlkg, Experiment::growth})
    if (name == to_string(e)) return e;
  throw Error(ErrorKind::invalid_config, "unknown experiment '" + name + "'");
}

CoefficientSet ExperimentConfig::coefficients() const {
  switch (mode) {
    case CoefficientMode::direct: return coefficients_from_mu(mu, grid.d, lambda);
    case CoefficientMode::damped: return derive_coefficients(mu1, mu2, grid.d, lambda);
    case CoefficientMode::tuned: return derive_coefficients(mu1, mu - mu1 * (2.0 - mu1) / 4.0, grid.d, lambda);
  }
  return {};
}

ExperimentConfig defaults_for(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::bessel_check:
      c.samples = 60;
      break;
    case Experiment::kernel_check:
      c.samples = 5;
      break;
    case Experiment::scatter:
      c.rate_tolerance = 0.1;
      break;
    case Experiment::dw_scatter:
      c.mode = CoefficientMode::damped;
      c.mu1 = 1.0;
      c.mu2 = 0.0;
      c.grid = {1, 1 << 15, 8192.0};
      c.preset = DataPreset::multiscale;
      c.width = 4.0;
      c.rate_tolerance = 0.15;
      break;
    case Experiment::nlkg:
      c.mode = CoefficientMode::tuned;
      c.mu1 = 0.05;
      c.mu = 0.0;
      c.grid = {3, 32, 176.0};
      c.width = 12.0;
      c.t_max = 100.0;
      c.dt = 1.0;
      break;
    case Experiment::growth:
      c.mu = 0.1;
      c.grid = {1, 1 << 15, 8192.0};
      c.preset = DataPreset::multiscale;
      c.width = 4.0;
      c.t_max = 1000.0;
      c.rate_tolerance = 0.07;
      break;
  }
  return c;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  for (const Entry& e : entries())
    if (key == e.key) {
      e.set(cfg, value);
      return;
    }
  throw Error(ErrorKind::invalid_config, "unknown config key '" + key + "'");
}

ExperimentConfig load_config(const std::string& path, Experiment fallback) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::invalid_config, std::string("cannot read config: ") + e.what());
  }
  const auto exp = tree.get_optional<std::string>("run.experiment");
  ExperimentConfig cfg = defaults_for(exp ? parse_experiment(*exp) : fallback);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw Error(ErrorKind::invalid_config, "config key '" + section + "' is outside a section");
    for (const auto& [key, value] : body) apply_setting(cfg, section + "." + key, value.data());
  }
  return cfg;
}

std::string to_ini(const ExperimentConfig& cfg) {
  std::ostringstream os;
  std::string section;
  for (const Entry& e : entries()) {
    const std::string key = e.key;
    const auto dot = key.find('.');
    if (key.substr(0, dot) != section) {
      if (!section.empty()) os << '\n';
      section = key.substr(0, dot);
      os << '[' << section << "]\n";
    }
    os << key.substr(dot + 1) << " = " << e.get(cfg) << '\n';
  }
  return os.str();
}

InitialData make_data(const ExperimentConfig& cfg) {
  PresetSpec p;
  p.kind = cfg.preset;
  p.slot = cfg.slot;
  p.amplitude = cfg.amplitude;
  p.width = cfg.width;
  p.wavenumber = cfg.wavenumber;
  p.t_max = cfg.t_max;
  p.taper = cfg.taper;
  InitialData d = make_preset(cfg.grid, p);
  if (cfg.experiment == Experiment::nlkg) d.state = scaled(normalize_pair(d.state), cfg.epsilon);
  return d;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::invalid_config, m); };
  if (lambda != 1 && lambda != -1) fail("coefficients.lambda must be +1 or -1");
  if (!(t_max > 0.0)) fail("schedule.t_max must be positive");
  if (samples < 2) fail("schedule.samples must be at least 2");
  if (workers < 0) fail("run.workers must be >= 0");
  if (output_dir.empty()) fail("run.output_dir must not be empty");
  switch (experiment) {
    case Experiment::bessel_check:
      if (!(tau_min > 0.0 && tau_max > tau_min)) fail("schedule.tau_min/tau_max must satisfy 0 < min < max");
      return;
    case Experiment::kernel_check:
      if (!(xi_min > 0.0 && xi_max >= xi_min)) fail("schedule.xi_min/xi_max must satisfy 0 < min <= max");
      coefficients();
      return;
    default:
      break;
  }
  grid.validate();
  const CoefficientSet c = coefficients();
  if (experiment == Experiment::nlkg) {
    if (grid.d != 3) fail("nlkg runs need grid.d = 3");
    if (!(dt > 0.0)) fail("schedule.dt must be positive");
    if (picard_iterations < 1) fail("nlkg.picard_iterations must be >= 1");
    if (!(epsilon > 0.0)) fail("data.epsilon must be positive");
  }
  if ((experiment == Experiment::scatter || experiment == Experiment::dw_scatter || experiment == Experiment::nlkg) &&
      c.mu < 0.0)
    fail("scattering experiments need mu >= 0");
  const InitialData d = make_data(*this);
  if (d.compact) check_horizon(grid, d.support_radius, t_max);
}

}  // namespace sid::cli
