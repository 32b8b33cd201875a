#include "sid/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sid/error.hpp"
#include "sid/presets.hpp"

namespace sid {

namespace {

double real_part(cplx z, double xi) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real()))) {
    std::ostringstream os;
    os << "profile multiplier has an imaginary residue at xi=" << xi;
    throw Error(ErrorKind::numerical, os.str());
  }
  return z.real();
}

double tail_estimate(const CoefficientSet& c, double l2_at_T, double T) {
  if (c.mu == 0.0) return 0.0;
  if (c.nu == cplx(0.0, 0.0)) return 6.0 * c.mu * l2_at_T / (1.0 + T);
  const double alpha = 0.5 + c.re_nu();
  return c.mu * l2_at_T / ((1.0 - alpha) * (1.0 + T));
}

}  // namespace

const char* to_string(FitStatus s) { return s == FitStatus::exact ? "exact" : "fitted"; }

std::vector<double> log_spaced(double a, double b, int count) {
  if (!(a > 0.0) || !(b > a) || count < 2) throw Error(ErrorKind::invalid_config, "log schedule needs 0 < a < b and count >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = a * std::pow(b / a, static_cast<double>(i) / (count - 1));
  out.back() = b;
  return out;
}

ScatterProfile extract_profile(const CoefficientSet& c, const Trajectory& trajectory, double T_ext,
                               double support_radius) {
  if (c.mu < 0.0) throw Error(ErrorKind::invalid_config, "profile extraction requires mu >= 0");
  const FieldState st = trajectory(T_ext);
  check_horizon(st.grid, support_radius, T_ext);
  ScatterProfile p;
  p.vplus = free_wave_evolve(st, 0.0);
  p.extraction_time = T_ext;
  p.tail_bound = tail_estimate(c, l2_norm(st.grid, st.v), T_ext);
  return p;
}

ScatterProfile asymptotic_profile(const CoefficientSet& c, const FieldState& data) {
  data.check();
  auto sg = SpectralGrid::get(data.grid);
  const auto& radii = sg->radii();
  const cplx phi = c.nu * (0.5 * std::numbers::pi) + 0.25 * std::numbers::pi;
  const double amp = std::sqrt(2.0 / std::numbers::pi);
  std::vector<ModeKernel> m(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double xi = radii[r];
    ModeKernel& k = m[r];
    if (xi == 0.0) {
      if (c.mu == 0.0) {
        k.E0 = 1.0;
        k.E1 = -data.t;
        k.E0_dot = 0.0;
        k.E1_dot = 1.0;
      } else {
        k.E0 = k.E1 = k.E0_dot = k.E1_dot = 0.0;
      }
      continue;
    }
    const FundamentalPair p = fundamental_pair(c, data.t, xi);
    const cplx w = p.e_plus * p.e_minus_dot - p.e_plus_dot * p.e_minus;
    const cplx th = xi - phi;
    const cplx cs = std::cos(th), sn = std::sin(th);
    k.E0 = real_part(amp * (p.e_minus_dot * cs - p.e_plus_dot * sn) / w, xi);
    k.E1 = real_part(amp * (p.e_plus * sn - p.e_minus * cs) / w, xi);
    k.E0_dot = real_part(amp * xi * (-p.e_minus_dot * sn - p.e_plus_dot * cs) / w, xi);
    k.E1_dot = real_part(amp * xi * (p.e_minus * sn + p.e_plus * cs) / w, xi);
  }
  ScatterProfile out;
  out.vplus = from_spectrum(*sg, apply_radial(*sg, to_spectrum(*sg, data), m), 0.0);
  out.extraction_time = std::numeric_limits<double>::infinity();
  out.tail_bound = 0.0;
  return out;
}

std::vector<double> cauchy_differences(const CoefficientSet& c, const Trajectory& trajectory,
                                       const std::vector<double>& T_list, double support_radius) {
  std::vector<double> diffs;
  ScatterProfile prev;
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    ScatterProfile cur = extract_profile(c, trajectory, T_list[i], support_radius);
    if (i > 0) diffs.push_back(norms(difference(cur.vplus, prev.vplus)).energy_pair);
    prev = std::move(cur);
  }
  if (diffs.size() >= 2 && diffs.back() > diffs.front()) {
    std::ostringstream os;
    os << "profile extraction is not Cauchy: difference grew from " << diffs.front() << " to " << diffs.back();
    throw Error(ErrorKind::divergence, os.str());
  }
  return diffs;
}

DecayCurve decay_curve(const Trajectory& trajectory, const ScatterProfile& profile, const std::vector<double>& times) {
  DecayCurve curve;
  for (double t : times) {
    const FieldState st = trajectory(t);
    const FieldState d = difference(st, free_wave_evolve(profile.vplus, t));
    DecaySample s;
    s.t = t;
    s.err_pos = hdot1_norm(d.grid, d.v);
    s.err_vel = l2_norm(d.grid, d.vt);
    s.err_pair = std::hypot(s.err_pos, s.err_vel);
    curve.samples.push_back(s);
  }
  return curve;
}

DecayFit fit_decay(const DecayCurve& curve, const CoefficientSet& c, const FitOptions& opt) {
  DecayFit f;
  const RatePrediction rates = predict_rates(c);
  f.prediction = rates.linear_order + opt.prediction_shift;
  std::vector<double> t, y;
  double largest = 0.0;
  for (const DecaySample& s : curve.samples) {
    if (s.t < opt.t_min || (opt.t_max > 0.0 && s.t > opt.t_max)) continue;
    double e = opt.quantity == FitQuantity::pair ? s.err_pair
               : opt.quantity == FitQuantity::position ? s.err_pos
                                                        : s.err_vel;
    largest = std::max(largest, e);
    if (opt.divide_log) e /= 1.0 + std::log1p(s.t);
    t.push_back(s.t);
    y.push_back(e);
  }
  f.samples = t.size();
  if (t.empty()) throw Error(ErrorKind::invalid_config, "no decay samples inside the fit window");
  f.t_min = t.front();
  f.t_max = t.back();
  if (largest < 1e-12) {
    f.status = FitStatus::exact;
    return f;
  }
  const PowerFit pf = fit_power(t, y);
  f.exponent = pf.exponent;
  f.power_residual = pf.residual;
  f.residual = pf.residual;
  if (rates.has_log && !opt.divide_log) {
    const double pinned = -0.5 + opt.prediction_shift;
    const LogModelFit lf = fit_log_model(t, y, pinned);
    f.log_residual = lf.residual;
    f.log_offset = lf.offset;
    f.strict_log_residual = log_model_residual(t, y, pinned, 1.0);
    f.log_model = lf.residual < pf.residual;
    if (f.log_model) f.residual = lf.residual;
  }
  f.abs_deviation = std::abs(f.exponent - f.prediction);
  return f;
}

DecayCurve dw_retransform_check(const CoefficientSet& c, const Trajectory& kg_trajectory,
                                const ScatterProfile& profile, const std::vector<double>& times, double data_norm) {
  const RatePrediction rates = predict_rates(c);
  DecayCurve curve;
  for (double t : times) {
    const FieldState st = kg_trajectory(t);
    const FieldState d = difference(st, free_wave_evolve(profile.vplus, t));
    const double a = std::pow(1.0 + t, -0.5 * c.mu1);
    const double b = 0.5 * c.mu1 / (1.0 + t);
    std::vector<double> vel(d.vt);
    for (std::size_t i = 0; i < vel.size(); ++i) vel[i] -= b * d.v[i];
    DecaySample s;
    s.t = t;
    s.err_pos = a * hdot1_norm(d.grid, d.v);
    s.err_vel = a * l2_norm(d.grid, vel);
    s.err_pair = std::hypot(s.err_pos, s.err_vel);
    double rate = (c.mu + std::abs(c.mu1)) * std::pow(1.0 + t, rates.linear_order + rates.dw_shift) * data_norm;
    if (rates.has_log) rate *= 1.0 + std::log1p(t);
    s.vel_bound_ratio = rate > 0.0 ? s.err_vel / rate : 0.0;
    curve.samples.push_back(s);
  }
  return curve;
}

}  // namespace sid
