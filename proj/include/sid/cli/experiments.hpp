#pragma once

#include "sid/cli/manifest.hpp"

namespace sid::cli {

// Runs one validated experiment, writing its CSV/snapshot outputs into cfg.output_dir.
// The returned record lists the outputs and headline metrics; wall time is left to the caller.
RunRecord run_experiment(const ExperimentConfig& cfg);

}  // namespace sid::cli
