#include "sid/nlkg.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <sstream>

#include "sid/error.hpp"

namespace sid {

namespace {

// Kernels needed by one step [a, b] with Gauss nodes g₀, g₁.
struct StepKernels {
  double a = 0.0, b = 0.0;
  double g[2] = {0.0, 0.0};
  double w = 0.0;
  std::vector<ModeKernel> to_node[2];    // (g_j, a)
  std::vector<ModeKernel> step;          // (b, a)
  std::vector<ModeKernel> from_node[2];  // (b, g_j)
};

// Maps the unpadded half-layout spectrum into the 2n grid; Nyquist entries are dropped.
struct PadMap {
  std::vector<long> target;  // −1 for dropped entries
};

PadMap make_pad_map(const GridSpec& g) {
  const int n = g.n, h = n / 2 + 1, H = n + 1, N = 2 * n;
  PadMap pm;
  pm.target.assign(g.spectral_size(), -1);
  for (std::size_t idx = 0; idx < pm.target.size(); ++idx) {
    std::size_t rest = idx;
    const int last = static_cast<int>(rest % h);
    rest /= h;
    if (last == n / 2) continue;
    long big = last;
    long stride = H;
    bool keep = true;
    for (int ax = 0; ax < g.d - 1; ++ax) {
      const int j = static_cast<int>(rest % n);
      rest /= n;
      if (j == n / 2) keep = false;
      const int k = j < n / 2 ? j : j - n;
      big += stride * (k >= 0 ? k : N + k);
      stride *= N;
    }
    if (keep) pm.target[idx] = big;
  }
  return pm;
}

std::string at_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

class Engine {
 public:
  Engine(const CoefficientSet& c, const GridSpec& g, const NlkgOptions& opt, bool split)
      : c_(c), sg_(SpectralGrid::get(g)), opt_(opt), split_(split) {
    if (opt_.padding == Padding::two_times) {
      big_ = SpectralGrid::get(GridSpec{g.d, 2 * g.n, g.half_width});
      pad_ = make_pad_map(g);
    }
  }

  const SpectralGrid& grid() const { return *sg_; }

  StepKernels kernels(double a, double b) const {
    StepKernels k;
    k.a = a;
    k.b = b;
    const double h = b - a;
    const double off = 0.5 * h / std::sqrt(3.0);
    k.g[0] = 0.5 * (a + b) - off;
    k.g[1] = 0.5 * (a + b) + off;
    k.w = 0.5 * h;
    if (split_) {
      for (int j = 0; j < 2; ++j) {
        k.to_node[j] = free_wave_kernels(*sg_, k.g[j] - a);
        k.from_node[j] = free_wave_kernels(*sg_, b - k.g[j]);
      }
      k.step = free_wave_kernels(*sg_, h);
      return k;
    }
    const auto& radii = sg_->radii();
    const long m = static_cast<long>(radii.size());
    for (int j = 0; j < 2; ++j) {
      k.to_node[j].resize(m);
      k.from_node[j].resize(m);
    }
    k.step.resize(m);
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (long r = 0; r < m; ++r) {
      try {
        const double xi = radii[r];
        if (xi > 0.0 && (1.0 + a) * xi >= kTauMin) {
          const FundamentalPair pa = fundamental_pair(c_, a, xi);
          const FundamentalPair pb = fundamental_pair(c_, b, xi);
          k.step[r] = kernel_from_pairs(pb, pa, b, a, xi);
          for (int j = 0; j < 2; ++j) {
            const FundamentalPair pg = fundamental_pair(c_, k.g[j], xi);
            k.to_node[j][r] = kernel_from_pairs(pg, pa, k.g[j], a, xi);
            k.from_node[j][r] = kernel_from_pairs(pb, pg, b, k.g[j], xi);
          }
        } else {
          k.step[r] = mode_kernel(c_, b, a, xi);
          for (int j = 0; j < 2; ++j) {
            k.to_node[j][r] = mode_kernel(c_, k.g[j], a, xi);
            k.from_node[j][r] = mode_kernel(c_, b, k.g[j], xi);
          }
        }
      } catch (const Error& e) {
        std::ostringstream os;
        os.precision(17);
        os << e.what() << " in step [" << a << ", " << b << "] at xi=" << radii[r];
#pragma omp critical
        if (!failure) failure = std::make_exception_ptr(Error(e.kind(), os.str()));
      }
    }
    if (failure) std::rethrow_exception(failure);
    return k;
  }

  // Spectrum of the right-hand side at time s: the nonlinearity, plus the mass term when splitting.
  std::vector<cplx> source_hat(double s, const std::vector<double>& v) const {
    std::vector<cplx> out;
    if (opt_.padding == Padding::none) {
      out = sg_->forward(nonlinearity(c_, s, v));
    } else {
      const std::vector<cplx> V = sg_->forward(v);
      const double up = static_cast<double>(big_->spec().size()) / static_cast<double>(sg_->spec().size());
      std::vector<cplx> Vb(big_->spec().spectral_size());
      for (std::size_t i = 0; i < V.size(); ++i)
        if (pad_.target[i] >= 0) Vb[pad_.target[i]] = up * V[i];
      const std::vector<cplx> Nb = big_->forward(nonlinearity(c_, s, big_->inverse(Vb)));
      out.assign(V.size(), cplx(0.0, 0.0));
      for (std::size_t i = 0; i < V.size(); ++i)
        if (pad_.target[i] >= 0) out[i] = Nb[pad_.target[i]] / up;
    }
    if (split_ && c_.mu != 0.0) {
      const std::vector<cplx> V = sg_->forward(v);
      const double k = -c_.mu / ((1.0 + s) * (1.0 + s));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * V[i];
    }
    return out;
  }

  // v̂(g_j) = [E(g_j, a)S]₁ + (g_j − a)/2 · E₁(g_j, a) F̂(a)
  std::vector<cplx> predict(const StepKernels& k, int j, const PairSpectrum& S, const std::vector<cplx>& src_a) const {
    const auto& idx = sg_->radius_index();
    const auto& K = k.to_node[j];
    const double half = 0.5 * (k.g[j] - k.a);
    std::vector<cplx> out(S.v.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const ModeKernel& e = K[idx[i]];
      out[i] = e.E0 * S.v[i] + e.E1 * (S.vt[i] + half * src_a[i]);
    }
    return out;
  }

  PairSpectrum advance(const StepKernels& k, const PairSpectrum& S, const std::vector<cplx> (&src)[2]) const {
    PairSpectrum out = apply_radial(*sg_, S, k.step);
    const auto& idx = sg_->radius_index();
    for (int j = 0; j < 2; ++j) {
      const auto& K = k.from_node[j];
      for (std::size_t i = 0; i < out.v.size(); ++i) {
        const ModeKernel& e = K[idx[i]];
        out.v[i] += k.w * e.E1 * src[j][i];
        out.vt[i] += k.w * e.E1_dot * src[j][i];
      }
    }
    return out;
  }

 private:
  CoefficientSet c_;
  std::shared_ptr<const SpectralGrid> sg_;
  std::shared_ptr<const SpectralGrid> big_;
  PadMap pad_;
  NlkgOptions opt_;
  bool split_;
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

int step_count(const CoefficientSet& c, const FieldState& data, double T, const NlkgOptions& opt) {
  data.check();
  if (data.grid.d < 3) throw Error(ErrorKind::invalid_config, "the nonlinear equation needs d >= 3");
  if (c.dimension != data.grid.d)
    throw Error(ErrorKind::invalid_config, "coefficient dimension does not match the grid");
  if (c.mu < 0.0) throw Error(ErrorKind::invalid_config, "nonlinear runs require mu >= 0");
  if (data.t != 0.0) throw Error(ErrorKind::invalid_config, "nonlinear data must be given at t = 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::invalid_config, "final time must be positive");
  if (!(opt.dt > 0.0) || opt.dt > 0.5 * data.grid.dx())
    throw Error(ErrorKind::invalid_config, "time step must satisfy 0 < dt <= dx/2");
  if (opt.support_radius > 0.0 && opt.support_radius + T > data.grid.half_width) {
    std::ostringstream os;
    os << "support radius " << opt.support_radius << " + T " << T << " exceeds box half width "
       << data.grid.half_width;
    throw Error(ErrorKind::horizon_violation, os.str());
  }
  return std::max(1, static_cast<int>(std::ceil(T / opt.dt - 1e-9)));
}

void start_run(NonlinearRun& run, const CoefficientSet& c, const FieldState& data, double h, NonlinearMethod m) {
  run.c = c;
  run.grid = data.grid;
  run.method = m;
  run.dt = h;
  run.states.clear();
  run.l10.clear();
  run.strichartz_partial.clear();
  run.nodes.clear();
}

// Appends a step state together with its L^10 norm and the running L^5L^10 norm.
void push_state(NonlinearRun& run, FieldState s, double& acc) {
  const double l = lr_norm(s.grid, s.v, 10.0);
  const double p = std::pow(l, 5.0);
  if (!run.l10.empty()) acc += 0.5 * run.dt * (std::pow(run.l10.back(), 5.0) + p);
  run.l10.push_back(l);
  run.strichartz_partial.push_back(std::pow(acc, 0.2));
  run.states.push_back(std::move(s));
}

void check_blowup(const std::vector<double>& v, double initial, double factor, double t) {
  const double m = sup_norm(v);
  if (!std::isfinite(m) || (initial > 0.0 && m > factor * initial)) {
    std::ostringstream os;
    os << "blow-up detected at t=" << at_time(t) << ": sup norm " << m << " exceeds " << factor
       << " times the initial " << initial;
    throw Error(ErrorKind::divergence, os.str());
  }
}

NonlinearRun step_run(const CoefficientSet& c, const FieldState& data, double T, const NlkgOptions& opt, bool split) {
  const int steps = step_count(c, data, T, opt);
  const double h = T / steps;
  Engine eng(c, data.grid, opt, split);
  const SpectralGrid& sg = eng.grid();
  NonlinearRun run;
  start_run(run, c, data, h, split ? NonlinearMethod::wave_splitting : NonlinearMethod::kernel_stepping);
  run.padding = opt.padding;
  double acc = 0.0;
  push_state(run, data, acc);
  const double initial = sup_norm(data.v);
  PairSpectrum S = to_spectrum(sg, data);
  std::vector<double> v = data.v;
  for (int i = 0; i < steps; ++i) {
    const double a = i * h, b = (i + 1 == steps) ? T : (i + 1) * h;
    const StepKernels K = eng.kernels(a, b);
    const std::vector<cplx> src_a = eng.source_hat(a, v);
    std::vector<cplx> src[2];
    for (int j = 0; j < 2; ++j) {
      std::vector<double> vg = sg.inverse(eng.predict(K, j, S, src_a));
      src[j] = eng.source_hat(K.g[j], vg);
      if (opt.keep_nodes) run.nodes.push_back({K.g[j], K.w, std::move(vg)});
    }
    S = eng.advance(K, S, src);
    FieldState next = from_spectrum(sg, S, b);
    check_blowup(next.v, initial, opt.blowup_factor, b);
    v = next.v;
    push_state(run, std::move(next), acc);
  }
  return run;
}

// Nodal values of one Picard iterate: v at every step node and at both Gauss nodes of each step.
struct Iterate {
  std::vector<FieldState> steps;
  std::vector<std::vector<double>> nodes;
};

double iterate_distance(const GridSpec& g, const Iterate& a, const Iterate& b, double h) {
  std::vector<double> times, values;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    std::vector<double> d(a.steps[i].v);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.steps[i].v[k];
    times.push_back(i * h);
    values.push_back(lr_norm(g, d, 10.0));
  }
  return spacetime_norm_from_values(times, values, 5.0);
}

}  // namespace

const char* to_string(Padding p) { return p == Padding::none ? "none" : "two_times"; }

const char* to_string(NonlinearMethod m) {
  switch (m) {
    case NonlinearMethod::kernel_stepping: return "kernel_stepping";
    case NonlinearMethod::picard: return "picard";
    case NonlinearMethod::wave_splitting: return "wave_splitting";
  }
  return "unknown";
}

std::vector<double> nonlinearity(const CoefficientSet& c, double t, const std::vector<double>& v) {
  if (c.dimension < 3) throw Error(ErrorKind::invalid_config, "the nonlinearity needs d >= 3");
  const double dm2 = c.dimension - 2.0;
  const double k = c.lambda_sign * std::pow(1.0 + t, -2.0 * c.mu1 / dm2);
  std::vector<double> out(v.size());
  if (c.dimension == 3) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = v[i], x2 = x * x;
      out[i] = k * x2 * x2 * x;
    }
  } else {
    const double p = 4.0 / dm2;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * std::pow(std::abs(v[i]), p) * v[i];
  }
  return out;
}

NonlinearRun nlkg_evolve(const CoefficientSet& c, const FieldState& data, double T, const NlkgOptions& opt) {
  return step_run(c, data, T, opt, false);
}

NonlinearRun wave_split_evolve(const CoefficientSet& c, const FieldState& data, double T, const NlkgOptions& opt) {
  return step_run(c, data, T, opt, true);
}

NonlinearRun picard_iterate(const CoefficientSet& c, const FieldState& data, double T, int n_iter,
                            const NlkgOptions& opt) {
  if (n_iter < 1) throw Error(ErrorKind::invalid_config, "Picard iteration count must be >= 1");
  const int steps = step_count(c, data, T, opt);
  const double h = T / steps;
  Engine eng(c, data.grid, opt, false);
  const SpectralGrid& sg = eng.grid();
  std::vector<StepKernels> kernels;
  for (int i = 0; i < steps; ++i) kernels.push_back(eng.kernels(i * h, (i + 1 == steps) ? T : (i + 1) * h));
  const double initial = sup_norm(data.v);

  // One application of Φ; prev == nullptr gives the linear solution.
  auto apply = [&](const Iterate* prev) {
    Iterate out;
    out.steps.push_back(data);
    PairSpectrum S = to_spectrum(sg, data);
    const std::vector<cplx> zero(sg.spec().spectral_size());
    for (int i = 0; i < steps; ++i) {
      const StepKernels& K = kernels[i];
      const std::vector<cplx> src_a = prev ? eng.source_hat(K.a, prev->steps[i].v) : zero;
      std::vector<cplx> src[2];
      for (int j = 0; j < 2; ++j) {
        out.nodes.push_back(sg.inverse(eng.predict(K, j, S, src_a)));
        src[j] = prev ? eng.source_hat(K.g[j], prev->nodes[2 * i + j]) : zero;
      }
      S = eng.advance(K, S, src);
      out.steps.push_back(from_spectrum(sg, S, K.b));
      check_blowup(out.steps.back().v, initial, opt.blowup_factor, K.b);
    }
    return out;
  };

  NonlinearRun run;
  start_run(run, c, data, h, NonlinearMethod::picard);
  run.padding = opt.padding;
  Iterate cur = apply(nullptr);
  int growing = 0;
  for (int k = 1; k <= n_iter + 1; ++k) {
    Iterate next = apply(&cur);
    const double d = iterate_distance(data.grid, next, cur, h);
    if (k > n_iter) {
      run.fixed_point_residual = d;
      break;
    }
    if (!run.picard_history.empty()) {
      const double ratio = d / run.picard_history.back();
      run.picard_ratios.push_back(ratio);
      growing = ratio >= 1.0 ? growing + 1 : 0;
      if (growing >= 3) {
        std::ostringstream os;
        os << "Picard iteration diverges, ratios:";
        for (double r : run.picard_ratios) os << ' ' << r;
        throw Error(ErrorKind::divergence, os.str());
      }
    }
    run.picard_history.push_back(d);
    cur = std::move(next);
    if (d == 0.0) {
      run.fixed_point_residual = 0.0;
      run.picard_converged = true;
      break;
    }
  }
  if (!run.picard_converged)
    run.picard_converged = run.fixed_point_residual <= 10.0 * run.picard_history.back();

  double acc = 0.0;
  for (FieldState& s : cur.steps) push_state(run, std::move(s), acc);
  if (opt.keep_nodes)
    for (int i = 0; i < steps; ++i)
      for (int j = 0; j < 2; ++j)
        run.nodes.push_back({kernels[i].g[j], kernels[i].w, std::move(cur.nodes[2 * i + j])});
  return run;
}

double x_distance(const NonlinearRun& a, const NonlinearRun& b) {
  if (a.states.size() != b.states.size() || !(a.grid == b.grid) || a.dt != b.dt)
    throw Error(ErrorKind::invalid_config, "runs do not share a time grid");
  std::vector<double> times, values;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    std::vector<double> d(a.states[i].v);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.states[i].v[k];
    times.push_back(a.states[i].t);
    values.push_back(lr_norm(a.grid, d, 10.0));
  }
  return spacetime_norm_from_values(times, values, 5.0);
}

std::vector<double> strichartz_tail(const NonlinearRun& run) {
  const std::size_t m = run.l10.size();
  std::vector<double> out(m, 0.0);
  double acc = 0.0;
  for (std::size_t i = m - 1; i-- > 0;) {
    acc += 0.5 * run.dt * (std::pow(run.l10[i], 5.0) + std::pow(run.l10[i + 1], 5.0));
    out[i] = std::pow(acc, 0.2);
  }
  return out;
}

namespace {

DecayFit window_fit(const std::vector<double>& t, const std::vector<double>& y, double t_min, double t_max,
                    double prediction) {
  DecayFit f;
  f.prediction = prediction;
  std::vector<double> tw, yw;
  double largest = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max) continue;
    tw.push_back(t[i]);
    yw.push_back(y[i]);
    largest = std::max(largest, std::abs(y[i]));
  }
  f.samples = tw.size();
  if (tw.empty()) throw Error(ErrorKind::invalid_config, "no samples inside the fit window");
  f.t_min = tw.front();
  f.t_max = tw.back();
  if (largest == 0.0) {
    f.status = FitStatus::exact;
    return f;
  }
  const PowerFit pf = fit_power(tw, yw);
  f.exponent = pf.exponent;
  f.power_residual = pf.residual;
  f.residual = pf.residual;
  f.abs_deviation = std::abs(f.exponent - f.prediction);
  return f;
}

}  // namespace

NonlinearScatter nonlinear_scatter(const NonlinearRun& run, double t_min, double t_max) {
  if (run.nodes.size() != 2 * (run.states.size() - 1))
    throw Error(ErrorKind::invalid_config, "nonlinear scatter needs the Gauss-node values of the run");
  const CoefficientSet& c = run.c;
  const double T = run.states.back().t;
  if (t_min < 0.0) t_min = T / 25.0;
  if (t_max < 0.0) t_max = T / 2.0;
  auto sg = SpectralGrid::get(run.grid);
  NlkgOptions opt;
  opt.dt = run.dt;
  opt.padding = run.padding;
  Engine eng(c, run.grid, opt, true);  // source = nonlinearity + mass term
  const bool unweighted = c.mu == 0.0;
  CoefficientSet flat = c;
  flat.mu1 = 0.0;
  Engine eng0(flat, run.grid, opt, false);

  const auto& radii = sg->radii();
  const auto& idx = sg->radius_index();
  const std::size_t m = sg->spec().spectral_size();
  PairSpectrum acc{std::vector<cplx>(m), std::vector<cplx>(m)};
  PairSpectrum acc0 = acc;
  std::vector<double> ms(radii.size()), mc(radii.size());
  auto pair_norm = [&](const PairSpectrum& p) {
    return std::sqrt(sg->spectral_square_sum(p.v, 1) + sg->spectral_square_sum(p.vt, 0));
  };
  auto add = [&](PairSpectrum& into, const std::vector<cplx>& F) {
    for (std::size_t i = 0; i < m; ++i) {
      into.v[i] += ms[idx[i]] * F[i];
      into.vt[i] += mc[idx[i]] * F[i];
    }
  };

  NonlinearScatter out;
  const std::size_t steps = run.states.size() - 1;
  out.times.resize(steps);
  out.err.resize(steps);
  if (unweighted) out.err_unweighted.resize(steps);
  for (std::size_t i = steps; i-- > 0;) {
    for (int j = 1; j >= 0; --j) {
      const QuadratureNode& q = run.nodes[2 * i + j];
      for (std::size_t r = 0; r < radii.size(); ++r) {
        const double xi = radii[r];
        ms[r] = q.weight * (xi > 0.0 ? -std::sin(q.t * xi) / xi : -q.t);
        mc[r] = q.weight * std::cos(q.t * xi);
      }
      add(acc, eng.source_hat(q.t, q.v));
      if (unweighted) add(acc0, eng0.source_hat(q.t, q.v));
    }
    out.times[i] = run.states[i].t;
    out.err[i] = pair_norm(acc);
    if (unweighted) out.err_unweighted[i] = pair_norm(acc0);
  }

  const FieldState& last = run.states.back();
  out.profile.vplus = free_wave_evolve(last, 0.0);
  out.profile.extraction_time = T;
  out.strichartz_tail = strichartz_tail(run);
  out.strichartz_tail.pop_back();

  const double dm2 = c.dimension - 2.0;
  out.prediction = c.mu == 0.0 ? -2.0 * c.mu1 / dm2 : predict_rates(c).nonlinear_order;
  out.raw_fit = window_fit(out.times, out.err, t_min, t_max, out.prediction);
  std::vector<double> y(steps);
  for (std::size_t i = 0; i < steps; ++i)
    y[i] = out.strichartz_tail[i] > 0.0 ? out.err[i] / std::pow(out.strichartz_tail[i], 5.0) : 0.0;
  out.majorant_fit = window_fit(out.times, y, t_min, t_max, out.prediction);
  if (unweighted) {
    for (std::size_t i = 0; i < steps; ++i)
      y[i] = out.err_unweighted[i] > 0.0 ? out.err[i] / out.err_unweighted[i] : 0.0;
    out.weight_fit = window_fit(out.times, y, t_min, t_max, out.prediction);
    out.fit = out.weight_fit;
  } else {
    out.fit = out.raw_fit;
  }
  return out;
}

DecayFit l2_growth_check(const NonlinearRun& run, double t_min, double t_max) {
  const RatePrediction rates = predict_rates(run.c);
  std::vector<double> t, y;
  for (const FieldState& s : run.states) {
    if (s.t < t_min || s.t > t_max) continue;
    t.push_back(s.t);
    y.push_back(l2_norm(s.grid, s.v));
  }
  DecayFit f;
  f.prediction = rates.alpha;
  f.samples = t.size();
  if (t.empty()) throw Error(ErrorKind::invalid_config, "no samples inside the growth window");
  f.t_min = t.front();
  f.t_max = t.back();
  const PowerFit pf = fit_power(t, y, SpanRule::t);
  f.exponent = pf.exponent;
  f.power_residual = pf.residual;
  f.residual = pf.residual;
  if (rates.has_log) {
    const LogModelFit lf = fit_log_model(t, y, rates.alpha, SpanRule::t);
    f.log_residual = lf.residual;
    f.log_offset = lf.offset;
    f.log_model = lf.residual < pf.residual;
    if (f.log_model) f.residual = lf.residual;
  }
  f.abs_deviation = std::abs(f.exponent - f.prediction);
  return f;
}

}  // namespace sid
