#pragma once

#include <utility>

#include "sid/params.hpp"

namespace sid {

enum class OrderKind { real, zero, imaginary };

struct BesselOrder {
  cplx value;
  OrderKind kind;

  // Accepts ν real with 0 ≤ ν ≤ 2 (non-integer unless ν = 0) or ν purely imaginary.
  static BesselOrder make(cplx nu);
};

enum class BesselRegime { series, ode_continuation, asymptotic };

const char* to_string(BesselRegime regime);

struct BesselEval {
  cplx J;
  cplx Y;
  cplx J_prime;
  cplx Y_prime;
  BesselRegime regime;
};

struct BesselConfig {
  double tau_switch = 10.0;
  double tau_asym = 40.0;
};

inline constexpr double kTauMin = 1e-8;
inline constexpr double kTauMax = 1e6;

BesselEval bessel_eval(const BesselOrder& nu, double tau, const BesselConfig& cfg = {});

// J_ν(τ) and J′_ν(τ) for any complex order with |Re ν| ≤ 2.5.
std::pair<cplx, cplx> bessel_j(cplx nu, double tau, const BesselConfig& cfg = {});

// |π·τ·(J·Y′ − Y·J′)/2 − 1|
double wronskian_defect(const BesselOrder& nu, double tau, const BesselConfig& cfg = {});

// Lanczos log-gamma for Re z ≥ 1/2.
cplx log_gamma(cplx z);

// 1/Γ(z), exact zero at the poles.
cplx recip_gamma(cplx z);

}  // namespace sid
