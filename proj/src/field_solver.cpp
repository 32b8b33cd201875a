#include "sid/field_solver.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "sid/error.hpp"
#include "sid/quadrature.hpp"

namespace sid {

FieldState FieldState::zeros(const GridSpec& g, double t) {
  g.validate();
  return {g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0), t};
}

void FieldState::check() const {
  grid.validate();
  if (v.size() != grid.size() || vt.size() != grid.size())
    throw Error(ErrorKind::invalid_config, "field arrays do not match the grid");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]) || !std::isfinite(vt[i]))
      throw Error(ErrorKind::numerical, "non-finite field value at t=" + std::to_string(t));
}

PairSpectrum to_spectrum(const SpectralGrid& sg, const FieldState& s) {
  return {sg.forward(s.v), sg.forward(s.vt)};
}

FieldState from_spectrum(const SpectralGrid& sg, const PairSpectrum& p, double t) {
  return {sg.spec(), sg.inverse(p.v), sg.inverse(p.vt), t};
}

RadialPropagator::RadialPropagator(const CoefficientSet& c, std::shared_ptr<const SpectralGrid> grid, double t0,
                                   KernelStrategy strategy, const BesselConfig& cfg)
    : c_(c), grid_(std::move(grid)), t0_(t0), strategy_(strategy), cfg_(cfg) {
  if (!(t0 >= 0.0)) throw Error(ErrorKind::invalid_config, "propagator start time must be >= 0");
  const auto& radii = grid_->radii();
  pair_t0_.resize(radii.size());
  use_pairs_.assign(radii.size(), 0);
  if (strategy_ != KernelStrategy::bessel) return;
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double tau0 = (1.0 + t0_) * radii[r];
    if (radii[r] > 0.0 && tau0 >= kTauMin) {
      pair_t0_[r] = fundamental_pair(c_, t0_, radii[r], cfg_);
      use_pairs_[r] = 1;
    }
  }
}

std::vector<ModeKernel> RadialPropagator::kernels(double t) const {
  if (!(t >= t0_)) {
    std::ostringstream os;
    os << "kernel target time " << t << " precedes start time " << t0_;
    throw Error(ErrorKind::invalid_config, os.str());
  }
  const auto& radii = grid_->radii();
  const long m = static_cast<long>(radii.size());
  std::vector<ModeKernel> out(radii.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long r = 0; r < m; ++r) {
    try {
      const double xi = radii[r];
      if (use_pairs_[r])
        out[r] = kernel_from_pairs(fundamental_pair(c_, t, xi, cfg_), pair_t0_[r], t, t0_, xi);
      else
        out[r] = mode_kernel(c_, t, t0_, xi, strategy_, cfg_);
    } catch (const Error& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " at (t=" << t << ", t0=" << t0_ << ", xi=" << radii[r] << ")";
#pragma omp critical
      if (!failure) failure = std::make_exception_ptr(Error(e.kind(), os.str()));
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

PairSpectrum RadialPropagator::apply(const PairSpectrum& p, double t) const {
  return apply_radial(*grid_, p, kernels(t));
}

FieldState RadialPropagator::evolve(const FieldState& s, double t) const {
  if (s.t != t0_) throw Error(ErrorKind::invalid_config, "state time differs from propagator start time");
  if (t == t0_) return s;
  return from_spectrum(*grid_, apply(to_spectrum(*grid_, s), t), t);
}

PairSpectrum apply_radial(const SpectralGrid& sg, const PairSpectrum& p, const std::vector<ModeKernel>& k) {
  const auto& idx = sg.radius_index();
  PairSpectrum out{std::vector<cplx>(p.v.size()), std::vector<cplx>(p.vt.size())};
  const long m = static_cast<long>(p.v.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) {
    const ModeKernel& e = k[idx[i]];
    out.v[i] = e.E0 * p.v[i] + e.E1 * p.vt[i];
    out.vt[i] = e.E0_dot * p.v[i] + e.E1_dot * p.vt[i];
  }
  return out;
}

FieldState linear_evolve(const CoefficientSet& c, const FieldState& s, double t_target, KernelStrategy strategy) {
  s.check();
  if (t_target == s.t) return s;
  RadialPropagator prop(c, SpectralGrid::get(s.grid), s.t, strategy);
  return prop.evolve(s, t_target);
}

std::vector<ModeKernel> free_wave_kernels(const SpectralGrid& sg, double dt) {
  const auto& radii = sg.radii();
  std::vector<ModeKernel> out(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double xi = radii[r];
    const double cs = std::cos(dt * xi), sn = std::sin(dt * xi);
    ModeKernel& k = out[r];
    k.E0 = cs;
    k.E1 = xi > 0.0 ? sn / xi : dt;
    k.E0_dot = -xi * sn;
    k.E1_dot = cs;
    k.xi_abs = xi;
  }
  return out;
}

FieldState free_wave_evolve(const FieldState& s, double t_target) {
  s.check();
  if (t_target == s.t) return s;
  auto sg = SpectralGrid::get(s.grid);
  return from_spectrum(*sg, apply_radial(*sg, to_spectrum(*sg, s), free_wave_kernels(*sg, t_target - s.t)), t_target);
}

FieldState liouville(const FieldState& s, double mu1, LiouvilleDirection dir) {
  if (!(s.t >= 0.0)) throw Error(ErrorKind::invalid_config, "Liouville transform needs t >= 0");
  const double T = 1.0 + s.t;
  const double a = std::pow(T, 0.5 * mu1);
  const double b = 0.5 * mu1 / T;
  FieldState out = s;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    if (dir == LiouvilleDirection::to_kg) {
      out.v[i] = a * s.v[i];
      out.vt[i] = a * (b * s.v[i] + s.vt[i]);
    } else {
      out.v[i] = s.v[i] / a;
      out.vt[i] = s.vt[i] / a - b * s.v[i] / a;
    }
  }
  return out;
}

double l2_norm(const GridSpec& g, const std::vector<double>& f) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return std::sqrt(s * g.cell_volume());
}

double hdot1_norm(const GridSpec& g, const std::vector<double>& f) {
  auto sg = SpectralGrid::get(g);
  return std::sqrt(sg->spectral_square_sum(sg->forward(f), 1));
}

double lr_norm(const GridSpec& g, const std::vector<double>& f, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(r >= 1.0)) throw Error(ErrorKind::invalid_config, "Lebesgue exponent must be >= 1");
  double s = 0.0;
  for (double x : f) s += std::pow(std::abs(x), r);
  return std::pow(s * g.cell_volume(), 1.0 / r);
}

NormReport norms(const FieldState& s) {
  NormReport n;
  n.l2 = l2_norm(s.grid, s.v);
  n.hdot1 = hdot1_norm(s.grid, s.v);
  n.h1 = std::hypot(n.l2, n.hdot1);
  n.energy_pair = std::hypot(n.hdot1, l2_norm(s.grid, s.vt));
  return n;
}

double h1l2_pair_norm(const FieldState& s) {
  const NormReport n = norms(s);
  return std::hypot(n.h1, l2_norm(s.grid, s.vt));
}

FieldState difference(const FieldState& a, const FieldState& b) {
  if (!(a.grid == b.grid)) throw Error(ErrorKind::invalid_config, "difference of fields on different grids");
  FieldState out = a;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    out.v[i] -= b.v[i];
    out.vt[i] -= b.vt[i];
  }
  return out;
}

FieldState scaled(const FieldState& a, double factor) {
  FieldState out = a;
  for (double& x : out.v) x *= factor;
  for (double& x : out.vt) x *= factor;
  return out;
}

double spacetime_norm_from_values(const std::vector<double>& times, const std::vector<double>& values, double q) {
  if (times.empty() || times.size() != values.size())
    throw Error(ErrorKind::invalid_config, "space-time norm needs a non-empty sample list");
  if (!(q >= 1.0) || std::isinf(q)) throw Error(ErrorKind::invalid_config, "time exponent must be finite and >= 1");
  if (times.size() == 1) return 0.0;
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - (times.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(times.back())))
      throw Error(ErrorKind::invalid_config, "space-time norm samples must be uniformly spaced");
    const double w = (i == 0 || i + 1 == times.size()) ? 0.5 : 1.0;
    acc += w * std::pow(values[i], q);
  }
  return std::pow(acc * h, 1.0 / q);
}

double spacetime_norm(const std::vector<FieldState>& samples, double q, double r) {
  if (samples.empty()) throw Error(ErrorKind::invalid_config, "space-time norm needs a non-empty sample list");
  std::vector<double> times, values;
  for (const FieldState& s : samples) {
    times.push_back(s.t);
    values.push_back(lr_norm(s.grid, s.v, r));
  }
  return spacetime_norm_from_values(times, values, q);
}

FieldState wave_integral(const GridSpec& g, const Source& f, double t_from, double t_to, const QuadratureSpec& q) {
  if (!(t_to >= t_from)) throw Error(ErrorKind::invalid_config, "wave integral needs t_to >= t_from");
  auto sg = SpectralGrid::get(g);
  FieldState zero = FieldState::zeros(g, 0.0);
  if (t_to == t_from) return zero;
  const int panels = std::max(1, static_cast<int>(std::ceil((t_to - t_from) / q.panel - 1e-12)));
  const double h = (t_to - t_from) / panels;
  if (sg->max_frequency() * h > q.nodes) {
    std::ostringstream os;
    os << "insufficient quadrature nodes: max|xi|*panel=" << sg->max_frequency() * h << " exceeds " << q.nodes;
    throw Error(ErrorKind::numerical, os.str());
  }
  const GaussRule rule = gauss_legendre(q.nodes);
  const auto& radii = sg->radii();
  const auto& idx = sg->radius_index();
  PairSpectrum acc{std::vector<cplx>(g.spectral_size()), std::vector<cplx>(g.spectral_size())};
  std::vector<double> ms(radii.size()), mc(radii.size());
  for (int p = 0; p < panels; ++p) {
    const double a = t_from + p * h;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double s = a + 0.5 * h * (rule.x[j] + 1.0);
      const double w = 0.5 * h * rule.w[j];
      const std::vector<double> src = f(s);
      if (src.size() != g.size()) throw Error(ErrorKind::invalid_config, "source size does not match grid");
      const std::vector<cplx> F = sg->forward(src);
      for (std::size_t r = 0; r < radii.size(); ++r) {
        const double xi = radii[r];
        ms[r] = w * (xi > 0.0 ? -std::sin(s * xi) / xi : -s);
        mc[r] = w * std::cos(s * xi);
      }
      for (std::size_t i = 0; i < F.size(); ++i) {
        acc.v[i] += ms[idx[i]] * F[i];
        acc.vt[i] += mc[idx[i]] * F[i];
      }
    }
  }
  return from_spectrum(*sg, acc, 0.0);
}

FieldState duhamel_tail(const CoefficientSet& c, const Trajectory& trajectory, double t_from, double t_to,
                        const QuadratureSpec& q) {
  const FieldState probe = trajectory(t_from);
  if (c.mu == 0.0) return FieldState::zeros(probe.grid, 0.0);
  const double mu = c.mu;
  auto source = [&](double s) {
    FieldState st = trajectory(s);
    const double k = -mu / ((1.0 + s) * (1.0 + s));
    for (double& x : st.v) x *= k;
    return st.v;
  };
  return wave_integral(probe.grid, source, t_from, t_to, q);
}

}  // namespace sid
