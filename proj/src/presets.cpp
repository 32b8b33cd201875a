#include "sid/presets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sid/error.hpp"

namespace sid {

namespace {

template <class F>
std::vector<double> sample_radial(const GridSpec& g, F&& f) {
  std::vector<double> out(g.size());
  const int n = g.n;
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    std::size_t rest = idx;
    double r2 = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const double x = g.coordinate(static_cast<int>(rest % n));
      rest /= n;
      r2 += x * x;
    }
    out[idx] = f(std::sqrt(r2));
  }
  return out;
}

}  // namespace

const char* to_string(DataPreset p) {
  switch (p) {
    case DataPreset::gaussian: return "gaussian";
    case DataPreset::bump: return "bump";
    case DataPreset::multiscale: return "multiscale";
    case DataPreset::plane_wave: return "plane_wave";
  }
  return "unknown";
}

DataPreset parse_preset(const std::string& name) {
  if (name == "gaussian") return DataPreset::gaussian;
  if (name == "bump") return DataPreset::bump;
  if (name == "multiscale") return DataPreset::multiscale;
  if (name == "plane_wave") return DataPreset::plane_wave;
  throw Error(ErrorKind::invalid_config, "unknown data preset '" + name + "'");
}

InitialData make_preset(const GridSpec& g, const PresetSpec& spec) {
  g.validate();
  if (!(spec.width > 0.0)) throw Error(ErrorKind::invalid_config, "preset width must be positive");
  InitialData out{FieldState::zeros(g, 0.0), 0.0, true};
  std::vector<double> profile;
  const double A = spec.amplitude;
  switch (spec.kind) {
    case DataPreset::gaussian: {
      const double s = spec.width;
      profile = sample_radial(g, [=](double r) { return A * std::exp(-r * r / (s * s)); });
      out.support_radius = s * std::sqrt(std::log(1e16));
      break;
    }
    case DataPreset::bump: {
      const double r0 = spec.width;
      profile = sample_radial(g, [=](double r) {
        const double q = r / r0;
        return q < 1.0 ? A * std::exp(1.0 - 1.0 / (1.0 - q * q)) : 0.0;
      });
      out.support_radius = r0;
      break;
    }
    case DataPreset::multiscale: {
      const double r_max = g.half_width - spec.t_max - 10.0;
      if (!(r_max > spec.taper))
        throw Error(ErrorKind::horizon_violation, "multiscale preset has no room: L - t_max - 10 must exceed the taper width");
      const double b = 0.5 * g.d + 0.05;
      const double core = spec.width;
      const double r_in = r_max - spec.taper;
      profile = sample_radial(g, [=](double r) {
        if (r >= r_max) return 0.0;
        const double base = A * std::pow(1.0 + (r / core) * (r / core), -0.5 * b);
        if (r <= r_in) return base;
        return base * 0.5 * (1.0 + std::cos(std::numbers::pi * (r - r_in) / spec.taper));
      });
      out.support_radius = r_max;
      break;
    }
    case DataPreset::plane_wave: {
      const double xi = g.frequency_unit() * spec.wavenumber;
      profile.resize(g.size());
      for (std::size_t i = 0; i < profile.size(); ++i)
        profile[i] = A * std::sin(xi * g.coordinate(static_cast<int>(i % g.n)));
      out.support_radius = g.half_width;
      out.compact = false;
      break;
    }
  }
  if (spec.slot == DataSlot::position)
    out.state.v = std::move(profile);
  else
    out.state.vt = std::move(profile);
  return out;
}

void check_horizon(const GridSpec& g, double support_radius, double t_max) {
  if (support_radius + t_max > g.half_width) {
    std::ostringstream os;
    os << "support radius " << support_radius << " + t_max " << t_max << " exceeds half width " << g.half_width;
    throw Error(ErrorKind::horizon_violation, os.str());
  }
}

FieldState normalize_pair(const FieldState& s) {
  const double n = h1l2_pair_norm(s);
  if (!(n > 0.0)) throw Error(ErrorKind::invalid_config, "cannot normalise zero data");
  return scaled(s, 1.0 / n);
}

}  // namespace sid
