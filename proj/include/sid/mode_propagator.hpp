#pragma once

#include <vector>

#include "sid/bessel.hpp"
#include "sid/params.hpp"

namespace sid {

struct FundamentalPair {
  cplx e_plus;
  cplx e_minus;
  cplx e_plus_dot;
  cplx e_minus_dot;
};

enum class KernelStrategy { bessel, ode_oracle };

const char* to_string(KernelStrategy s);

// Solution matrix of v̂″ + (ξ² + μ/(1+t)²) v̂ = 0 mapping (v̂, v̂′)(t0) to (v̂, v̂′)(t):
// [[E0, E1], [E0_dot, E1_dot]].
struct ModeKernel {
  double E0 = 1.0;
  double E1 = 0.0;
  double E0_dot = 0.0;
  double E1_dot = 1.0;
  double t = 0.0;
  double t0 = 0.0;
  double xi_abs = 0.0;
  KernelStrategy strategy = KernelStrategy::bessel;

  double determinant() const { return E0 * E1_dot - E1 * E0_dot; }
};

struct ModeState {
  double value = 0.0;
  double velocity = 0.0;
};

// e₊ = τ^{1/2} J_ν(τ), e₋ = τ^{1/2} Y_ν(τ), τ = (1+t)ξ, and their t-derivatives.
FundamentalPair fundamental_pair(const CoefficientSet& c, double t, double xi_abs, const BesselConfig& cfg = {});

// Kernel assembled from fundamental pairs at t and t0; the Wronskian is taken at t0.
ModeKernel kernel_from_pairs(const FundamentalPair& at_t, const FundamentalPair& at_t0, double t, double t0,
                             double xi_abs);

// Closed form at ξ = 0 (Euler equation).
ModeKernel zero_mode_kernel(const CoefficientSet& c, double t, double t0);

// ξ = 0 is dispatched to the closed form. With strategy=bessel, τ or τ0 below the Bessel
// range falls back to the oracle, reported through the returned strategy.
ModeKernel mode_kernel(const CoefficientSet& c, double t, double t0, double xi_abs,
                       KernelStrategy strategy = KernelStrategy::bessel, const BesselConfig& cfg = {});

// Adaptive Runge-Kutta-Fehlberg 7(8) integration, abs/rel tolerance 1e-12/1e-11.
ModeState ode_oracle(const CoefficientSet& c, double t, double t0, double xi_abs, ModeState init);

ModeKernel oracle_kernel(const CoefficientSet& c, double t, double t0, double xi_abs);

// Relative difference of two kernels, column by column in the energy norm √(ξ²v² + v′²)
// (plain Euclidean at ξ = 0); the larger of the two columns is returned.
double kernel_relative_difference(const ModeKernel& a, const ModeKernel& reference);

// a ∘ b: the kernel from b.t0 to a.t, requires a.t0 == b.t.
ModeKernel compose(const ModeKernel& a, const ModeKernel& b);

struct KernelSample {
  double t;
  double t0;
  double xi_abs;
};

struct KernelBoundReport {
  double max_ratio_E0 = 0.0;
  double max_ratio_E1 = 0.0;
  double max_ratio_E0_dot = 0.0;
  double max_ratio_E1_dot = 0.0;
  std::size_t samples = 0;

  double max_ratio() const;
};

// Observed |kernel| / bound with unit constants, bounds in max-form over the two
// alternatives; the logarithmic case uses exponent -1/2 - eps for |E0|.
KernelBoundReport kernel_bound_report(const CoefficientSet& c, const std::vector<KernelSample>& grid,
                                      double eps = 0.05);

// Per-sample ratios, same conventions as kernel_bound_report.
KernelBoundReport kernel_bound_ratios(const CoefficientSet& c, const ModeKernel& k, double eps = 0.05);

}  // namespace sid
