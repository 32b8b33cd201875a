#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "sid/bessel.hpp"
#include "sid/mode_propagator.hpp"
#include "sid/spectral_grid.hpp"

namespace sid {

// (v, ∂ₜv) at time t on a periodic grid, physical representation.
struct FieldState {
  GridSpec grid;
  std::vector<double> v;
  std::vector<double> vt;
  double t = 0.0;

  static FieldState zeros(const GridSpec& g, double t = 0.0);
  // Throws invalid_config on shape mismatch, numerical on non-finite values.
  void check() const;
};

struct PairSpectrum {
  std::vector<cplx> v;
  std::vector<cplx> vt;
};

struct NormReport {
  double l2 = 0.0;
  double hdot1 = 0.0;
  double h1 = 0.0;
  double energy_pair = 0.0;  // ‖(v, vt)‖ in Ḣ¹×L²
};

enum class LiouvilleDirection { to_kg, to_dw };

PairSpectrum to_spectrum(const SpectralGrid& sg, const FieldState& s);
FieldState from_spectrum(const SpectralGrid& sg, const PairSpectrum& p, double t);

// Kernels at every distinct lattice radius, with the t0 fundamental pair cached.
class RadialPropagator {
 public:
  RadialPropagator(const CoefficientSet& c, std::shared_ptr<const SpectralGrid> grid, double t0,
                   KernelStrategy strategy = KernelStrategy::bessel, const BesselConfig& cfg = {});

  double t0() const { return t0_; }
  const SpectralGrid& grid() const { return *grid_; }
  std::vector<ModeKernel> kernels(double t) const;
  PairSpectrum apply(const PairSpectrum& p, double t) const;
  FieldState evolve(const FieldState& s, double t) const;

 private:
  CoefficientSet c_;
  std::shared_ptr<const SpectralGrid> grid_;
  double t0_;
  KernelStrategy strategy_;
  BesselConfig cfg_;
  std::vector<FundamentalPair> pair_t0_;
  std::vector<char> use_pairs_;
};

// Applies per-radius 2×2 multipliers [[a, b], [c, d]] to a spectral pair.
PairSpectrum apply_radial(const SpectralGrid& sg, const PairSpectrum& p, const std::vector<ModeKernel>& k);

FieldState linear_evolve(const CoefficientSet& c, const FieldState& s, double t_target,
                         KernelStrategy strategy = KernelStrategy::bessel);

// Free wave group 𝓦(t_target − s.t); t_target may lie below s.t.
FieldState free_wave_evolve(const FieldState& s, double t_target);

// Free wave multiplier matrix for a shift by dt at each radius of sg.
std::vector<ModeKernel> free_wave_kernels(const SpectralGrid& sg, double dt);

FieldState liouville(const FieldState& s, double mu1, LiouvilleDirection dir);

double l2_norm(const GridSpec& g, const std::vector<double>& f);
double hdot1_norm(const GridSpec& g, const std::vector<double>& f);
double lr_norm(const GridSpec& g, const std::vector<double>& f, double r);
NormReport norms(const FieldState& s);
double h1l2_pair_norm(const FieldState& s);

FieldState difference(const FieldState& a, const FieldState& b);
FieldState scaled(const FieldState& a, double factor);

// (∫ ‖v(t)‖_{L^r}^q dt)^{1/q} by the trapezoid rule over uniformly spaced samples.
double spacetime_norm(const std::vector<FieldState>& samples, double q, double r);
// Same from precomputed ‖v(t)‖_{L^r} values on a uniform time grid.
double spacetime_norm_from_values(const std::vector<double>& times, const std::vector<double>& lr_values, double q);

using Trajectory = std::function<FieldState(double)>;
using Source = std::function<std::vector<double>(double)>;

struct QuadratureSpec {
  int nodes = 20;      // Gauss-Legendre nodes per panel
  double panel = 0.5;  // panel length
};

// ∫_{t_from}^{t_to} 𝓦(−s)(0, f(s)) ds as a pair at t = 0.
// Throws numerical when max|ξ|·panel exceeds the node count.
FieldState wave_integral(const GridSpec& g, const Source& f, double t_from, double t_to,
                         const QuadratureSpec& q = {});

// The mass-term increment ∫ 𝓦(−s)(0, −μ(1+s)^{−2} v(s)) ds.
FieldState duhamel_tail(const CoefficientSet& c, const Trajectory& trajectory, double t_from, double t_to,
                        const QuadratureSpec& q = {});

}  // namespace sid
