#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sid/params.hpp"

namespace sid {

// Periodic box [−L, L)^d with n points per axis.
struct GridSpec {
  int d = 1;
  int n = 1024;
  double half_width = 64.0;

  double dx() const { return 2.0 * half_width / n; }
  double cell_volume() const;
  std::size_t size() const;           // n^d
  std::size_t spectral_size() const;  // n^{d−1}·(n/2+1)
  double coordinate(int j) const { return -half_width + j * dx(); }
  double frequency_unit() const;      // π/L

  // Throws invalid_config unless d ∈ {1,2,3}, n ≥ 8 is a power of two and L > 0.
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

// FFT plans and the |ξ| lattice for one grid. Spectral arrays use the real-to-complex
// half layout; radius_index() maps each spectral entry to a distinct |ξ|.
class SpectralGrid {
 public:
  explicit SpectralGrid(const GridSpec& g);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  const GridSpec& spec() const { return spec_; }

  std::vector<cplx> forward(const std::vector<double>& f) const;
  // Normalised inverse (divides by n^d).
  std::vector<double> inverse(const std::vector<cplx>& F) const;

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<int>& radius_index() const { return radius_index_; }
  // Multiplicity of each half-layout entry in the full spectrum (1 or 2).
  const std::vector<double>& parseval_weight() const { return weight_; }
  double max_frequency() const { return radii_.back(); }

  // Σ_x f² dx^d evaluated in spectral space, with an optional |ξ|^{2s} weight.
  double spectral_square_sum(const std::vector<cplx>& F, int derivative_order = 0) const;

  // Shared instance per grid spec.
  static std::shared_ptr<const SpectralGrid> get(const GridSpec& g);

 private:
  struct Plans;
  GridSpec spec_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> radii_;
  std::vector<int> radius_index_;
  std::vector<double> weight_;
};

}  // namespace sid
