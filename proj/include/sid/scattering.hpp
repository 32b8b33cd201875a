#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sid/field_solver.hpp"
#include "sid/fitting.hpp"

namespace sid {

struct ScatterProfile {
  FieldState vplus;  // at t = 0
  double extraction_time = 0.0;  // +inf for the exact per-mode limit
  double tail_bound = 0.0;
};

struct DecaySample {
  double t = 0.0;
  double err_pair = 0.0;  // Ḣ¹×L²
  double err_pos = 0.0;   // Ḣ¹ of the position part
  double err_vel = 0.0;   // L² of the velocity part
  double vel_bound_ratio = 0.0;  // DW only: err_vel over the (μ+|μ₁|)-weighted rate
};

struct DecayCurve {
  std::vector<DecaySample> samples;
};

enum class FitStatus { fitted, exact };
const char* to_string(FitStatus s);

enum class FitQuantity { pair, position, velocity };

struct FitOptions {
  double t_min = 0.0;  // window; t_max <= 0 selects the last sample
  double t_max = 0.0;
  FitQuantity quantity = FitQuantity::pair;
  bool divide_log = false;  // fit log err − log(1 + log(1+t)) instead of log err
  double prediction_shift = 0.0;  // added to the linear order (−μ₁/2 for the damped equation)
};

struct DecayFit {
  FitStatus status = FitStatus::fitted;
  double exponent = 0.0;
  bool log_model = false;  // true when the log-corrected model wins
  double residual = 0.0;   // residual of the selected model
  double power_residual = 0.0;
  double log_residual = 0.0;      // free-offset log model, −1/2 pinned
  double log_offset = 0.0;
  double strict_log_residual = 0.0;  // offset fixed to 1
  double t_min = 0.0;
  double t_max = 0.0;
  double prediction = 0.0;
  double abs_deviation = 0.0;
  std::size_t samples = 0;
};

// 𝓦(−T)·pair(T) with the tail estimate μ∫_T^∞(1+s)^{−2}‖v(s)‖ds, where ‖v(s)‖ is
// continued from ‖v(T)‖ at the L² growth rate. Requires μ ≥ 0 and T + support ≤ L.
ScatterProfile extract_profile(const CoefficientSet& c, const Trajectory& trajectory, double T_ext,
                               double support_radius);

// Exact per-mode limit of 𝓦(−t)pair(t) for a linear solution with data s at s.t, from the
// Bessel asymptotics. The ξ = 0 mode does not scatter when μ > 0 and is set to zero.
ScatterProfile asymptotic_profile(const CoefficientSet& c, const FieldState& data);

// Successive differences ‖v₊(T_{i+1}) − v₊(T_i)‖ in Ḣ¹×L²; throws divergence when
// the last difference exceeds the first.
std::vector<double> cauchy_differences(const CoefficientSet& c, const Trajectory& trajectory,
                                       const std::vector<double>& T_list, double support_radius);

DecayCurve decay_curve(const Trajectory& trajectory, const ScatterProfile& profile, const std::vector<double>& times);

DecayFit fit_decay(const DecayCurve& curve, const CoefficientSet& c, const FitOptions& opt = {});

// Damped-equation errors ‖u − (1+t)^{−μ₁/2}(𝓦(t)v₊)₁‖ for u recovered from the
// Klein-Gordon trajectory; the velocity error uses the exact derivative relation.
DecayCurve dw_retransform_check(const CoefficientSet& c, const Trajectory& kg_trajectory,
                                const ScatterProfile& profile, const std::vector<double>& times, double data_norm);

std::vector<double> log_spaced(double a, double b, int count);

}  // namespace sid
