#pragma once

#include <vector>

namespace sid {

struct PowerFit {
  double exponent = 0.0;
  double log_amplitude = 0.0;
  double residual = 0.0;  // RMS in log space
};

// y ≈ A·(1+t)^p·(c + log(1+t)) with p pinned; c and A free.
struct LogModelFit {
  double offset = 1.0;
  double log_amplitude = 0.0;
  double residual = 0.0;
};

enum class SpanRule { one_plus_t, t };

// Least squares of log y against log(1+t). Requires ≥ 8 positive samples spanning at
// least one decade (in 1+t, or in t for growth windows); throws invalid_config otherwise.
PowerFit fit_power(const std::vector<double>& t, const std::vector<double>& y, SpanRule span = SpanRule::one_plus_t);

LogModelFit fit_log_model(const std::vector<double>& t, const std::vector<double>& y, double pinned_exponent,
                          SpanRule span = SpanRule::one_plus_t);

// Residual of the log model at a fixed offset (offset = 1 is (1+t)^p(1+log(1+t))).
double log_model_residual(const std::vector<double>& t, const std::vector<double>& y, double pinned_exponent,
                          double offset);

void require_fit_samples(const std::vector<double>& t, const std::vector<double>& y, SpanRule span);

}  // namespace sid
