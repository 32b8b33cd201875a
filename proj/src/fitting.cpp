#include "sid/fitting.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "sid/error.hpp"

namespace sid {

namespace {

double rms_about_mean(const std::vector<double>& r, double& mean) {
  mean = 0.0;
  for (double x : r) mean += x;
  mean /= static_cast<double>(r.size());
  double s = 0.0;
  for (double x : r) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(r.size()));
}

}  // namespace

void require_fit_samples(const std::vector<double>& t, const std::vector<double>& y, SpanRule span) {
  if (t.size() != y.size()) throw Error(ErrorKind::invalid_config, "fit needs equally many times and values");
  if (t.size() < 8) throw Error(ErrorKind::invalid_config, "fit needs at least 8 samples");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0) || !std::isfinite(y[i])) throw Error(ErrorKind::invalid_config, "fit values must be positive");
    if (!(t[i] >= 0.0)) throw Error(ErrorKind::invalid_config, "fit times must be >= 0");
    const double x = span == SpanRule::t ? t[i] : 1.0 + t[i];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi < 10.0 * lo * (1.0 - 1e-12))
    throw Error(ErrorKind::invalid_config, span == SpanRule::t ? "fit window must span a decade in t"
                                                               : "fit window must span a decade in 1+t");
}

PowerFit fit_power(const std::vector<double>& t, const std::vector<double>& y, SpanRule span) {
  require_fit_samples(t, y, span);
  const double n = static_cast<double>(t.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = std::log1p(t[i]), z = std::log(y[i]);
    sx += x;
    sy += z;
    sxx += x * x;
    sxy += x * z;
  }
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.log_amplitude = (sy - f.exponent * sx) / n;
  double r = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = std::log(y[i]) - f.log_amplitude - f.exponent * std::log1p(t[i]);
    r += e * e;
  }
  f.residual = std::sqrt(r / n);
  return f;
}

double log_model_residual(const std::vector<double>& t, const std::vector<double>& y, double p, double offset) {
  std::vector<double> r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = std::log1p(t[i]);
    if (!(offset + x > 0.0)) return std::numeric_limits<double>::infinity();
    r[i] = std::log(y[i]) - p * x - std::log(offset + x);
  }
  double mean;
  return rms_about_mean(r, mean);
}

LogModelFit fit_log_model(const std::vector<double>& t, const std::vector<double>& y, double p, SpanRule span) {
  require_fit_samples(t, y, span);
  double xmin = std::numeric_limits<double>::infinity();
  for (double s : t) xmin = std::min(xmin, std::log1p(s));
  auto obj = [&](double c) { return log_model_residual(t, y, p, c); };
  const auto best = boost::math::tools::brent_find_minima(obj, -xmin + 1e-6, 1e4, 50);
  LogModelFit f;
  f.offset = best.first;
  f.residual = best.second;
  std::vector<double> r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = std::log1p(t[i]);
    r[i] = std::log(y[i]) - p * x - std::log(f.offset + x);
  }
  rms_about_mean(r, f.log_amplitude);
  return f;
}

}  // namespace sid
