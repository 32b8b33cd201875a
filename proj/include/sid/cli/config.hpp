#pragma once

#include <string>

#include "sid/nlkg.hpp"
#include "sid/presets.hpp"

namespace sid::cli {

enum class Experiment { bessel_check, kernel_check, scatter, dw_scatter, nlkg, growth };

const char* to_string(Experiment e);
// Throws invalid_config for unknown names.
Experiment parse_experiment(const std::string& name);

enum class CoefficientMode { direct, damped, tuned };

struct ExperimentConfig {
  Experiment experiment = Experiment::scatter;

  // [coefficients] direct: μ given; damped: (μ₁, μ₂) given; tuned: μ₁ and μ given, μ₂ derived.
  CoefficientMode mode = CoefficientMode::direct;
  double mu = 0.1875;
  double mu1 = 0.0;
  double mu2 = 0.0;
  int lambda = 1;

  GridSpec grid{1, 1 << 14, 1024.0};

  // [data]
  DataPreset preset = DataPreset::gaussian;
  DataSlot slot = DataSlot::position;
  double amplitude = 1.0;
  double width = 1.0;
  int wavenumber = 1;
  double epsilon = 1e-3;
  double taper = 50.0;

  // [schedule]
  double t_max = 800.0;
  int samples = 16;
  double fit_t_min = -1.0;  // < 0 selects the experiment default
  double fit_t_max = -1.0;
  double dt = 0.1;
  double tau_min = 1e-2;
  double tau_max = 100.0;
  double xi_min = 0.1;
  double xi_max = 10.0;

  // [nlkg]
  NonlinearMethod method = NonlinearMethod::kernel_stepping;
  Padding padding = Padding::none;
  int picard_iterations = 20;
  double blowup_factor = 1e3;

  // [tolerances]
  double rate_tolerance = 0.05;
  double oracle_tolerance = 1e-7;

  // [run]
  std::string output_dir = "sidlab_out";
  int seed = 0;
  int workers = 0;  // 0: all available cores

  CoefficientSet coefficients() const;
  // Throws invalid_config for inconsistent fields and horizon_violation when the data
  // support plus t_max does not fit in the box.
  void validate() const;
};

ExperimentConfig defaults_for(Experiment e);

// Assigns "section.key" = value; throws invalid_config for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Reads an INI file on top of the defaults of its run.experiment (or of `fallback`).
ExperimentConfig load_config(const std::string& path, Experiment fallback);

// Every field as INI text; the canonical form hashed into the manifest.
std::string to_ini(const ExperimentConfig& cfg);

InitialData make_data(const ExperimentConfig& cfg);

}  // namespace sid::cli
