#pragma once

#include <string>
#include <vector>

#include "sid/cli/config.hpp"

namespace sid::cli {

std::string sha256_hex(const std::string& text);

struct Metric {
  std::string name;
  double value;
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<std::string> outputs;  // file names relative to output_dir
  std::vector<Metric> metrics;
  double wall_time_s = 0.0;
  int workers = 1;
  int exit_status = 0;
};

// manifest.json in config.output_dir: config text and hash, versions, wall time, outputs.
void write_manifest(const RunRecord& r);

}  // namespace sid::cli
