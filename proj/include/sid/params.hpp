#pragma once

#include <complex>

namespace sid {

using cplx = std::complex<double>;

// Coefficients of u_tt - Δu + μ₁/(1+t) u_t + μ₂/(1+t)² u = λ-term, and the
// quantities derived from them for the Liouville-transformed equation.
struct CoefficientSet {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu = 0.0;
  cplx nu{0.5, 0.0};
  int lambda_sign = 1;
  int dimension = 1;

  double re_nu() const { return nu.real(); }
};

struct RatePrediction {
  double linear_order = 0.0;
  bool has_log = false;
  double nonlinear_order = 0.0;
  double dw_shift = 0.0;
  double alpha = 0.0;
};

struct Admissibility {
  bool admissible = false;
  double gamma = 0.0;
};

// Bessel order ½√(1−4μ), or (i/2)√(4μ−1) above μ = 1/4.
cplx bessel_order_for(double mu);

CoefficientSet derive_coefficients(double mu1, double mu2, int d, int lambda_sign = 1);

// Effective mass given directly: μ₁ = 0, μ₂ = μ.
CoefficientSet coefficients_from_mu(double mu, int d, int lambda_sign = 1);

RatePrediction predict_rates(const CoefficientSet& c);

// r = +inf is allowed; q = +inf is allowed.
Admissibility check_admissible_pair(double q, double r, int d);

}  // namespace sid
