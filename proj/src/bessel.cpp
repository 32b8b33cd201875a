#include "sid/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "sid/error.hpp"

namespace sid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr int kSeriesCap = 200;
constexpr double kSeriesTol = 1e-18;
const cplx kI{0.0, 1.0};

struct JValue {
  cplx J;
  cplx Jp;
};

bool is_nonpositive_integer(cplx nu, int& n) {
  if (nu.imag() != 0.0) return false;
  const double r = std::round(nu.real());
  if (r > 0.0 || std::abs(nu.real() - r) > 1e-14) return false;
  n = static_cast<int>(-r);
  return true;
}

// Ascending series Σ (−1)^k (τ/2)^{2k+ν} / (k! Γ(ν+k+1)), differentiated term by term.
JValue j_series(cplx nu, double tau) {
  int n = 0;
  if (is_nonpositive_integer(nu, n) && n > 0) {
    JValue pos = j_series(cplx(n, 0.0), tau);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return {sign * pos.J, sign * pos.Jp};
  }
  const double half = 0.5 * tau;
  const double x = -half * half;
  cplx term = std::exp(nu * std::log(half)) * recip_gamma(nu + 1.0);
  cplx sum = term;
  cplx dsum = term * nu / tau;
  double peak = std::abs(term);
  for (int k = 1; k < kSeriesCap; ++k) {
    term *= x / (static_cast<double>(k) * (nu + static_cast<double>(k)));
    sum += term;
    dsum += term * (2.0 * k + nu) / tau;
    const double a = std::abs(term);
    peak = std::max(peak, a);
    if (a <= kSeriesTol * std::max(std::abs(sum), peak) && k > half) break;
  }
  return {sum, dsum};
}

// Y₀ from its logarithmic series with harmonic-number coefficients.
JValue y0_series(double tau, const JValue& j0) {
  const double q = 0.25 * tau * tau;
  const double lg = std::log(0.5 * tau) + kEulerGamma;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  double dsum = 0.0;
  double peak = 0.0;
  for (int k = 1; k < kSeriesCap; ++k) {
    term *= q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double c = sign * harmonic * term;
    sum += c;
    dsum += c * 2.0 * k / tau;
    peak = std::max(peak, std::abs(c));
    if (std::abs(c) <= kSeriesTol * std::max(std::abs(sum), peak) && k > 0.5 * tau) break;
  }
  const double f = 2.0 / kPi;
  return {f * (lg * j0.J + sum), f * (j0.J / tau + lg * j0.Jp + dsum)};
}

BesselEval series_eval(const BesselOrder& nu, double tau) {
  const JValue jp = j_series(nu.value, tau);
  BesselEval out{jp.J, 0.0, jp.Jp, 0.0, BesselRegime::series};
  if (nu.kind == OrderKind::zero) {
    const JValue y = y0_series(tau, jp);
    out.Y = y.J;
    out.Y_prime = y.Jp;
  } else {
    const JValue jm = j_series(-nu.value, tau);
    const cplx s = std::sin(nu.value * kPi);
    const cplx c = std::cos(nu.value * kPi);
    out.Y = (jp.J * c - jm.J) / s;
    out.Y_prime = (jp.Jp * c - jm.Jp) / s;
  }
  return out;
}

// Hankel large-argument expansion of H¹ and H², differentiated analytically.
BesselEval asymptotic_eval(cplx nu, double tau, bool real_order) {
  const cplx four_nu2 = 4.0 * nu * nu;
  cplx a = 1.0;
  cplx p1 = 1.0, p2 = 1.0, dp1 = 0.0, dp2 = 0.0;
  cplx ik = 1.0;
  double inv_pow = 1.0;
  double last = 1.0;
  for (int k = 1; k < 120; ++k) {
    a *= (four_nu2 - static_cast<double>((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
    inv_pow /= tau;
    ik *= kI;
    const cplx t = a * inv_pow;
    const double mag = std::abs(t);
    if (mag > last && k > 2) break;
    p1 += ik * t;
    p2 += std::conj(ik) * t;
    dp1 -= static_cast<double>(k) * ik * t / tau;
    dp2 -= static_cast<double>(k) * std::conj(ik) * t / tau;
    last = mag;
    if (mag < 1e-17) break;
  }
  const double pref = std::sqrt(2.0 / (kPi * tau));
  const cplx omega = tau - nu * (0.5 * kPi) - 0.25 * kPi;
  const cplx e1 = std::exp(kI * omega);
  const cplx h1 = pref * e1 * p1;
  const cplx h1p = pref * e1 * ((kI - 0.5 / tau) * p1 + dp1);
  BesselEval out{};
  out.regime = BesselRegime::asymptotic;
  if (real_order) {
    out.J = h1.real();
    out.Y = h1.imag();
    out.J_prime = h1p.real();
    out.Y_prime = h1p.imag();
    return out;
  }
  const cplx e2 = std::exp(-kI * omega);
  const cplx h2 = pref * e2 * p2;
  const cplx h2p = pref * e2 * ((-kI - 0.5 / tau) * p2 + dp2);
  out.J = 0.5 * (h1 + h2);
  out.Y = (h1 - h2) / (2.0 * kI);
  out.J_prime = 0.5 * (h1p + h2p);
  out.Y_prime = (h1p - h2p) / (2.0 * kI);
  return out;
}

// One Taylor step of τ²V″ + τV′ + (τ² − ν²)V = 0 from τ0 to τ0 + h for two solutions.
void taylor_step(cplx nu2, double t0, double h, cplx v[2], cplx dv[2]) {
  for (int s = 0; s < 2; ++s) {
    cplx cm2 = 0.0, cm1 = 0.0;
    cplx c0 = v[s], c1 = dv[s];
    cplx val = c0 + c1 * h;
    cplx der = c1;
    double hp = h;  // h^(n+1) after the first iteration
    const double scale = std::abs(c0) + std::abs(c1) * h;
    for (int n = 0; n < 80; ++n) {
      const cplx c2 = -((n + 1.0) * t0 * (2.0 * n + 1.0) * c1 + (n * n + t0 * t0 - nu2) * c0 +
                        2.0 * t0 * cm1 + cm2) /
                      (t0 * t0 * (n + 1.0) * (n + 2.0));
      const double hn2 = hp * h;
      val += c2 * hn2;
      der += (n + 2.0) * c2 * hp;
      const double mag = std::abs(c2) * hn2;
      cm2 = cm1;
      cm1 = c0;
      c0 = c1;
      c1 = c2;
      hp = hn2;
      if (n > 4 && mag < 1e-19 * scale && std::abs(c0) * hp / h < 1e-19 * scale) break;
    }
    v[s] = val;
    dv[s] = der;
  }
}

// States at τ_switch + 2k, k = 0, 1, …, so each evaluation is a single Taylor step.
struct ContinuationTable {
  cplx nu{-99.0, 0.0};
  double tau_switch = -1.0;
  double tau_asym = -1.0;
  bool full = false;
  std::vector<std::array<cplx, 4>> nodes;  // J, Y, J′, Y′
};

thread_local ContinuationTable g_table;

constexpr double kContinuationStep = 2.0;

void build_table(const BesselOrder* order, cplx nu, const BesselConfig& cfg) {
  const bool full = order != nullptr;
  g_table.nu = nu;
  g_table.tau_switch = cfg.tau_switch;
  g_table.tau_asym = cfg.tau_asym;
  g_table.full = full;
  g_table.nodes.clear();
  cplx v[2], dv[2];
  if (full) {
    const BesselEval s = series_eval(*order, cfg.tau_switch);
    v[0] = s.J;
    dv[0] = s.J_prime;
    v[1] = s.Y;
    dv[1] = s.Y_prime;
  } else {
    const JValue s = j_series(nu, cfg.tau_switch);
    v[0] = s.J;
    dv[0] = s.Jp;
    v[1] = 0.0;
    dv[1] = 0.0;
  }
  const cplx nu2 = nu * nu;
  const int count = static_cast<int>(std::ceil((cfg.tau_asym - cfg.tau_switch) / kContinuationStep)) + 1;
  for (int k = 0; k < count; ++k) {
    g_table.nodes.push_back({v[0], v[1], dv[0], dv[1]});
    taylor_step(nu2, cfg.tau_switch + k * kContinuationStep, kContinuationStep, v, dv);
  }
}

BesselEval continuation_eval(const BesselOrder* order, cplx nu, double tau, const BesselConfig& cfg) {
  const bool full = order != nullptr;
  if (g_table.nu != nu || g_table.tau_switch != cfg.tau_switch || g_table.tau_asym != cfg.tau_asym ||
      g_table.full != full)
    build_table(order, nu, cfg);
  const int last = static_cast<int>(g_table.nodes.size()) - 1;
  const int k = std::clamp(static_cast<int>((tau - cfg.tau_switch) / kContinuationStep), 0, last);
  const auto& node = g_table.nodes[k];
  cplx v[2] = {node[0], node[1]};
  cplx dv[2] = {node[2], node[3]};
  const double t0 = cfg.tau_switch + k * kContinuationStep;
  if (tau > t0) taylor_step(nu * nu, t0, tau - t0, v, dv);
  return {v[0], v[1], dv[0], dv[1], BesselRegime::ode_continuation};
}

void check_tau(double tau) {
  if (!(tau >= kTauMin && tau <= kTauMax)) {
    std::ostringstream os;
    os << "bessel argument tau=" << tau << " outside [" << kTauMin << ", " << kTauMax << "]";
    throw Error(ErrorKind::out_of_range, os.str());
  }
}

void check_config(const BesselConfig& cfg) {
  if (!(cfg.tau_switch > 0.0 && cfg.tau_asym >= cfg.tau_switch))
    throw Error(ErrorKind::invalid_config, "bessel regime switch points must satisfy 0 < tau_switch <= tau_asym");
}

}  // namespace

const char* to_string(BesselRegime regime) {
  switch (regime) {
    case BesselRegime::series: return "series";
    case BesselRegime::ode_continuation: return "ode_continuation";
    case BesselRegime::asymptotic: return "asymptotic";
  }
  return "unknown";
}

BesselOrder BesselOrder::make(cplx nu) {
  if (nu == cplx(0.0, 0.0)) return {nu, OrderKind::zero};
  if (nu.imag() == 0.0) {
    const double r = nu.real();
    if (r < 0.0 || r > 2.0)
      throw Error(ErrorKind::invalid_config, "real Bessel order must lie in [0, 2]");
    if (std::abs(r - std::round(r)) < 1e-12)
      throw Error(ErrorKind::out_of_range, "nonzero integer Bessel order is not supported");
    return {nu, OrderKind::real};
  }
  if (nu.real() == 0.0) return {nu, OrderKind::imaginary};
  throw Error(ErrorKind::invalid_config, "Bessel order must be real or purely imaginary");
}

BesselEval bessel_eval(const BesselOrder& nu, double tau, const BesselConfig& cfg) {
  check_tau(tau);
  check_config(cfg);
  if (tau <= cfg.tau_switch) return series_eval(nu, tau);
  if (tau >= cfg.tau_asym) return asymptotic_eval(nu.value, tau, nu.kind != OrderKind::imaginary);
  return continuation_eval(&nu, nu.value, tau, cfg);
}

std::pair<cplx, cplx> bessel_j(cplx nu, double tau, const BesselConfig& cfg) {
  check_tau(tau);
  check_config(cfg);
  if (std::abs(nu.real()) > 2.5) throw Error(ErrorKind::invalid_config, "|Re nu| > 2.5 not supported");
  if (tau <= cfg.tau_switch) {
    const JValue j = j_series(nu, tau);
    return {j.J, j.Jp};
  }
  if (tau >= cfg.tau_asym) {
    const BesselEval e = asymptotic_eval(nu, tau, nu.imag() == 0.0);
    return {e.J, e.J_prime};
  }
  const BesselEval e = continuation_eval(nullptr, nu, tau, cfg);
  return {e.J, e.J_prime};
}

double wronskian_defect(const BesselOrder& nu, double tau, const BesselConfig& cfg) {
  const BesselEval e = bessel_eval(nu, tau, cfg);
  return std::abs(kPi * tau * (e.J * e.Y_prime - e.Y * e.J_prime) / 2.0 - 1.0);
}

}  // namespace sid
