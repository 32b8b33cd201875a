#include "sid/mode_propagator.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "sid/error.hpp"

namespace sid {

namespace {

std::string where(double t, double t0, double xi) {
  std::ostringstream os;
  os.precision(17);
  os << "(t=" << t << ", t0=" << t0 << ", xi=" << xi << ")";
  return os.str();
}

void check_times(double t, double t0, double xi) {
  if (!(t0 >= 0.0 && t >= t0 && xi >= 0.0 && std::isfinite(t) && std::isfinite(xi)))
    throw Error(ErrorKind::invalid_config, "kernel requires t >= t0 >= 0 and xi >= 0 " + where(t, t0, xi));
}

double take_real(cplx z, double t, double t0, double xi) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
    throw Error(ErrorKind::numerical, "kernel has a non-negligible imaginary residue " + where(t, t0, xi));
  return z.real();
}

}  // namespace

const char* to_string(KernelStrategy s) { return s == KernelStrategy::bessel ? "bessel" : "ode_oracle"; }

FundamentalPair fundamental_pair(const CoefficientSet& c, double t, double xi_abs, const BesselConfig& cfg) {
  const BesselOrder order = BesselOrder::make(c.nu);
  const double tau = (1.0 + t) * xi_abs;
  const BesselEval e = bessel_eval(order, tau, cfg);
  const double s = std::sqrt(tau);
  return {s * e.J, s * e.Y, xi_abs * (e.J / (2.0 * s) + s * e.J_prime),
          xi_abs * (e.Y / (2.0 * s) + s * e.Y_prime)};
}

ModeKernel kernel_from_pairs(const FundamentalPair& a, const FundamentalPair& b, double t, double t0,
                             double xi_abs) {
  const cplx w = b.e_plus * b.e_minus_dot - b.e_plus_dot * b.e_minus;
  ModeKernel k;
  k.t = t;
  k.t0 = t0;
  k.xi_abs = xi_abs;
  k.strategy = KernelStrategy::bessel;
  k.E0 = take_real((a.e_plus * b.e_minus_dot - b.e_plus_dot * a.e_minus) / w, t, t0, xi_abs);
  k.E1 = take_real((b.e_plus * a.e_minus - a.e_plus * b.e_minus) / w, t, t0, xi_abs);
  k.E0_dot = take_real((a.e_plus_dot * b.e_minus_dot - b.e_plus_dot * a.e_minus_dot) / w, t, t0, xi_abs);
  k.E1_dot = take_real((b.e_plus * a.e_minus_dot - a.e_plus_dot * b.e_minus) / w, t, t0, xi_abs);
  return k;
}

ModeKernel zero_mode_kernel(const CoefficientSet& c, double t, double t0) {
  check_times(t, t0, 0.0);
  const double r = (1.0 + t) / (1.0 + t0);
  const double L = std::log(r);
  const cplx x = c.nu * L;
  // S = sinh(νL)/ν, C = cosh(νL); S → L as ν → 0 and S = sin(bL)/b for ν = ib.
  const cplx S = std::abs(x) < 1e-4 ? L * (1.0 + x * x / 6.0) : std::sinh(x) / c.nu;
  const cplx C = std::cosh(x);
  const double sr = std::sqrt(r);
  ModeKernel k;
  k.t = t;
  k.t0 = t0;
  k.xi_abs = 0.0;
  k.E0 = sr * (C - 0.5 * S).real();
  k.E1 = (1.0 + t0) * sr * S.real();
  k.E0_dot = -c.mu * sr * S.real() / (1.0 + t);
  k.E1_dot = (1.0 + t0) / (1.0 + t) * sr * (0.5 * S + C).real();
  return k;
}

ModeKernel mode_kernel(const CoefficientSet& c, double t, double t0, double xi_abs, KernelStrategy strategy,
                       const BesselConfig& cfg) {
  check_times(t, t0, xi_abs);
  if (xi_abs == 0.0) {
    ModeKernel k = zero_mode_kernel(c, t, t0);
    k.strategy = strategy;
    return k;
  }
  if (strategy == KernelStrategy::ode_oracle || (1.0 + t0) * xi_abs < kTauMin)
    return oracle_kernel(c, t, t0, xi_abs);
  return kernel_from_pairs(fundamental_pair(c, t, xi_abs, cfg), fundamental_pair(c, t0, xi_abs, cfg), t, t0,
                           xi_abs);
}

ModeState ode_oracle(const CoefficientSet& c, double t, double t0, double xi_abs, ModeState init) {
  check_times(t, t0, xi_abs);
  if (t == t0) return init;
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double xi2 = xi_abs * xi_abs;
  const double mu = c.mu;
  auto rhs = [xi2, mu](const State& y, State& dy, double s) {
    dy[0] = y[1];
    dy[1] = -(xi2 + mu / ((1.0 + s) * (1.0 + s))) * y[0];
  };
  State y{init.value, init.velocity};
  auto stepper = odeint::make_controlled(1e-12, 1e-11, odeint::runge_kutta_fehlberg78<State>());
  const double dt0 = std::min(t - t0, 0.01 / (1.0 + xi_abs));
  try {
    odeint::integrate_adaptive(stepper, rhs, y, t0, t, dt0);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::numerical, std::string("oracle step-size underflow ") + where(t, t0, xi_abs) + ": " + e.what());
  }
  return {y[0], y[1]};
}

ModeKernel oracle_kernel(const CoefficientSet& c, double t, double t0, double xi_abs) {
  const ModeState a = ode_oracle(c, t, t0, xi_abs, {1.0, 0.0});
  const ModeState b = ode_oracle(c, t, t0, xi_abs, {0.0, 1.0});
  ModeKernel k;
  k.t = t;
  k.t0 = t0;
  k.xi_abs = xi_abs;
  k.strategy = KernelStrategy::ode_oracle;
  k.E0 = a.value;
  k.E0_dot = a.velocity;
  k.E1 = b.value;
  k.E1_dot = b.velocity;
  return k;
}

double kernel_relative_difference(const ModeKernel& a, const ModeKernel& ref) {
  const double w = ref.xi_abs > 0.0 ? ref.xi_abs : 1.0;
  auto col = [w](double dv, double dd) { return std::hypot(w * dv, dd); };
  const double c0 = col(a.E0 - ref.E0, a.E0_dot - ref.E0_dot) / col(ref.E0, ref.E0_dot);
  const double c1 = col(a.E1 - ref.E1, a.E1_dot - ref.E1_dot) / col(ref.E1, ref.E1_dot);
  return std::max(c0, c1);
}

ModeKernel compose(const ModeKernel& a, const ModeKernel& b) {
  ModeKernel k;
  k.t = a.t;
  k.t0 = b.t0;
  k.xi_abs = a.xi_abs;
  k.strategy = a.strategy;
  k.E0 = a.E0 * b.E0 + a.E1 * b.E0_dot;
  k.E1 = a.E0 * b.E1 + a.E1 * b.E1_dot;
  k.E0_dot = a.E0_dot * b.E0 + a.E1_dot * b.E0_dot;
  k.E1_dot = a.E0_dot * b.E1 + a.E1_dot * b.E1_dot;
  return k;
}

double KernelBoundReport::max_ratio() const {
  return std::max({max_ratio_E0, max_ratio_E1, max_ratio_E0_dot, max_ratio_E1_dot});
}

KernelBoundReport kernel_bound_ratios(const CoefficientSet& c, const ModeKernel& k, double eps) {
  const double T = 1.0 + k.t;
  const double T0 = 1.0 + k.t0;
  const double x = k.xi_abs;
  const double r = c.re_nu();
  double b0, b1, b0d, b1d;
  if (c.mu < 0.0) {
    b0 = std::pow(T, 0.5 + r) * std::pow(T0, 0.5 - r);
    b1 = b0;
    b0d = (1.0 + x) * std::pow(T, -0.5 + r);
    b1d = std::pow(T, -0.5 + r);
  } else if (c.mu == 0.25) {
    const double lg = 1.0 + std::log(T / T0);
    b0 = std::max(1.0 + std::pow(x, -0.5 - eps), std::sqrt(T / T0) * lg);
    b1 = std::max(1.0 / x, std::sqrt(T * T0) * lg);
    b0d = 1.0 + x;
    b1d = 1.0;
  } else {
    b0 = std::max(1.0 + std::pow(x, -0.5 - r), std::pow(T, 0.5 + r) * std::pow(T0, -0.5 - r));
    b1 = std::max(1.0 / x + std::pow(T0, 0.5 - r) * std::pow(x, -0.5 - r), std::pow(T, 0.5 + r) * std::pow(T0, 0.5 - r));
    b0d = std::max(x + std::pow(T0, -0.5 - r) * std::pow(x, 0.5 - r), x + std::pow(T, -0.5 + r) * std::pow(T0, -0.5 - r));
    b1d = std::pow(T, -0.5 + r) * std::pow(T0, 0.5 - r);
  }
  KernelBoundReport rep;
  rep.max_ratio_E0 = std::abs(k.E0) / b0;
  rep.max_ratio_E1 = std::abs(k.E1) / b1;
  rep.max_ratio_E0_dot = std::abs(k.E0_dot) / b0d;
  rep.max_ratio_E1_dot = std::abs(k.E1_dot) / b1d;
  rep.samples = 1;
  return rep;
}

KernelBoundReport kernel_bound_report(const CoefficientSet& c, const std::vector<KernelSample>& grid, double eps) {
  KernelBoundReport rep;
  for (const KernelSample& s : grid) {
    if (!(s.xi_abs > 0.0)) throw Error(ErrorKind::invalid_config, "bound report needs xi > 0");
    const KernelBoundReport one = kernel_bound_ratios(c, mode_kernel(c, s.t, s.t0, s.xi_abs), eps);
    rep.max_ratio_E0 = std::max(rep.max_ratio_E0, one.max_ratio_E0);
    rep.max_ratio_E1 = std::max(rep.max_ratio_E1, one.max_ratio_E1);
    rep.max_ratio_E0_dot = std::max(rep.max_ratio_E0_dot, one.max_ratio_E0_dot);
    rep.max_ratio_E1_dot = std::max(rep.max_ratio_E1_dot, one.max_ratio_E1_dot);
    ++rep.samples;
  }
  return rep;
}

}  // namespace sid
