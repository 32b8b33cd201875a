#pragma once

#include <string>

#include "sid/field_solver.hpp"

namespace sid {

enum class DataPreset { gaussian, bump, multiscale, plane_wave };
enum class DataSlot { position, velocity };

const char* to_string(DataPreset p);
DataPreset parse_preset(const std::string& name);

struct PresetSpec {
  DataPreset kind = DataPreset::gaussian;
  DataSlot slot = DataSlot::position;
  double amplitude = 1.0;
  double width = 1.0;     // Gaussian σ in e^{−|x|²/σ²}; bump radius; multiscale core scale
  int wavenumber = 1;     // plane_wave: ξ = π·k/L along the first axis
  double t_max = 0.0;     // multiscale: the profile is tapered to vanish at L − t_max − 10
  double taper = 50.0;    // multiscale taper width
};

struct InitialData {
  FieldState state;
  double support_radius = 0.0;  // radius outside which the data is below 1e−16 of its peak
  bool compact = true;          // false for periodic data that has no ℝ^d counterpart
};

InitialData make_preset(const GridSpec& g, const PresetSpec& spec);

// Throws horizon_violation when support_radius + t_max exceeds the half width.
void check_horizon(const GridSpec& g, double support_radius, double t_max);

// Rescales so the pair has unit H¹×L² norm.
FieldState normalize_pair(const FieldState& s);

}  // namespace sid
