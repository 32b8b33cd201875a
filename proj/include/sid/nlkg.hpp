#pragma once

#include <vector>

#include "sid/field_solver.hpp"
#include "sid/scattering.hpp"

namespace sid {

enum class Padding { none, two_times };
enum class NonlinearMethod { kernel_stepping, picard, wave_splitting };

const char* to_string(Padding p);
const char* to_string(NonlinearMethod m);

struct NlkgOptions {
  double dt = 0.1;
  Padding padding = Padding::none;
  double blowup_factor = 1e3;   // abort when ‖v‖_∞ exceeds this multiple of its initial value
  double support_radius = 0.0;  // > 0 enables the horizon check support + T ≤ L
  bool keep_nodes = true;       // store v at the Gauss nodes (needed by nonlinear_scatter)
};

// v at one interior quadrature node of a step, with its quadrature weight.
struct QuadratureNode {
  double t = 0.0;
  double weight = 0.0;
  std::vector<double> v;
};

struct NonlinearRun {
  CoefficientSet c;
  GridSpec grid;
  NonlinearMethod method = NonlinearMethod::kernel_stepping;
  double dt = 0.0;
  std::vector<FieldState> states;            // at t_i = i·dt
  std::vector<double> l10;                   // ‖v(t_i)‖_{L^10}
  std::vector<double> strichartz_partial;    // ‖v‖_{L^5([0,t_i]; L^10)}
  std::vector<QuadratureNode> nodes;         // two per step, in time order
  std::vector<double> picard_history;        // ‖v^{k+1} − v^k‖_X
  std::vector<double> picard_ratios;
  double fixed_point_residual = 0.0;         // ‖Φ[v*] − v*‖_X
  bool picard_converged = false;
  Padding padding = Padding::none;

  const FieldState& terminal() const { return states.back(); }
  double x_norm() const { return strichartz_partial.back(); }
};

// λ(1+t)^{−2μ₁/(d−2)}|v|^{4/(d−2)}v pointwise; requires d ≥ 3.
std::vector<double> nonlinearity(const CoefficientSet& c, double t, const std::vector<double>& v);

// Exact 𝓔-kernel propagation per step plus a two-node Gauss Duhamel increment whose
// node values come from a second-order predictor.
NonlinearRun nlkg_evolve(const CoefficientSet& c, const FieldState& data, double T, const NlkgOptions& opt = {});

// Iterates the discrete map Φ of the same scheme from the linear solution. Stops early
// when an increment is exactly zero (floating-point fixed point). Throws divergence when
// three consecutive ratios are ≥ 1.
NonlinearRun picard_iterate(const CoefficientSet& c, const FieldState& data, double T, int n_iter,
                            const NlkgOptions& opt = {});

// Free waves plus the mass term and nonlinearity as one source, with the same step structure.
NonlinearRun wave_split_evolve(const CoefficientSet& c, const FieldState& data, double T,
                               const NlkgOptions& opt = {});

// ‖a − b‖ in L^5([0,T]; L^10) over the common step nodes.
double x_distance(const NonlinearRun& a, const NonlinearRun& b);

struct NonlinearScatter {
  ScatterProfile profile;             // 𝓦(−T)·pair(T)
  std::vector<double> times;          // step nodes t_i < T
  std::vector<double> err;            // ‖∫_t^T 𝓦(−s)(0, F(s)) ds‖, F = mass term + nonlinearity
  std::vector<double> err_unweighted; // μ = 0 only: same tail of λ|v|⁴v without the time weight
  std::vector<double> strichartz_tail;  // ‖v‖_{L^5([t,T]; L^10)}
  DecayFit raw_fit;                   // slope of err
  DecayFit majorant_fit;              // slope of err / tail^5
  DecayFit weight_fit;                // slope of err / err_unweighted (μ = 0)
  DecayFit fit;                       // the one compared against the prediction
  double prediction = 0.0;
};

// Fit window defaults to [T/25, T/2]; the prediction is max{−1/2 + Re ν, −2μ₁/(d−2)} when μ > 0
// and −2μ₁/(d−2) when μ = 0.
NonlinearScatter nonlinear_scatter(const NonlinearRun& run, double t_min = -1.0, double t_max = -1.0);

// Slope of ‖v(t)‖_{L²} over [t_min, t_max] against α; the log model is also fitted at μ = 1/4.
DecayFit l2_growth_check(const NonlinearRun& run, double t_min, double t_max);

// ‖v‖_{L^5([t_i,T]; L^10)} for every step node.
std::vector<double> strichartz_tail(const NonlinearRun& run);

}  // namespace sid
