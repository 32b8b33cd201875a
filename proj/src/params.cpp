#include "sid/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sid/error.hpp"

namespace sid {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_config: return "invalid_config";
    case ErrorKind::horizon_violation: return "horizon_violation";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

cplx bessel_order_for(double mu) {
  if (mu <= 0.25) return {0.5 * std::sqrt(1.0 - 4.0 * mu), 0.0};
  return {0.0, 0.5 * std::sqrt(4.0 * mu - 1.0)};
}

CoefficientSet derive_coefficients(double mu1, double mu2, int d, int lambda_sign) {
  if (d < 1) throw Error(ErrorKind::invalid_config, "dimension must be >= 1, got " + std::to_string(d));
  if (!std::isfinite(mu1) || !std::isfinite(mu2))
    throw Error(ErrorKind::invalid_config, "coefficients must be finite");
  if (lambda_sign != 1 && lambda_sign != -1)
    throw Error(ErrorKind::invalid_config, "lambda sign must be +1 or -1");
  CoefficientSet c;
  c.mu1 = mu1;
  c.mu2 = mu2;
  c.mu = mu1 * (2.0 - mu1) / 4.0 + mu2;
  c.nu = bessel_order_for(c.mu);
  c.lambda_sign = lambda_sign;
  c.dimension = d;
  return c;
}

CoefficientSet coefficients_from_mu(double mu, int d, int lambda_sign) {
  return derive_coefficients(0.0, mu, d, lambda_sign);
}

RatePrediction predict_rates(const CoefficientSet& c) {
  RatePrediction r;
  const double re = c.re_nu();
  r.linear_order = -0.5 + re;
  r.has_log = (c.mu == 0.25);
  r.dw_shift = -0.5 * c.mu1;
  if (c.dimension >= 3) {
    const double damp = 2.0 * c.mu1 / (c.dimension - 2);
    r.nonlinear_order = std::max(r.linear_order, -damp);
    r.alpha = std::max(0.5 + re, 1.0 - damp);
  } else {
    // No energy-critical power below d = 3; only the linear exponents apply.
    r.nonlinear_order = r.linear_order;
    r.alpha = 0.5 + re;
  }
  return r;
}

Admissibility check_admissible_pair(double q, double r, int d) {
  if (!(q >= 2.0) || !(r >= 2.0))
    throw Error(ErrorKind::invalid_config, "exponents must satisfy q, r >= 2");
  if (d < 1) throw Error(ErrorKind::invalid_config, "dimension must be >= 1");
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  Admissibility a;
  a.gamma = d * (0.5 - inv_r) - inv_q;
  const bool endpoint = (q == 2.0 && std::isinf(r) && d == 3);
  const double rhs = 0.5 * (d - 1) * (0.5 - inv_r);
  a.admissible = !endpoint && inv_q <= rhs + 4.0 * std::numeric_limits<double>::epsilon();
  return a;
}

}  // namespace sid
