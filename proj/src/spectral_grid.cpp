#include "sid/spectral_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "sid/error.hpp"

namespace sid {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double GridSpec::cell_volume() const { return std::pow(dx(), d); }

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

std::size_t GridSpec::spectral_size() const { return size() / n * (n / 2 + 1); }

double GridSpec::frequency_unit() const { return std::numbers::pi / half_width; }

void GridSpec::validate() const {
  if (d < 1 || d > 3) throw Error(ErrorKind::invalid_config, "grid dimension must be 1, 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0)
    throw Error(ErrorKind::invalid_config, "grid size n must be a power of two >= 8, got " + std::to_string(n));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorKind::invalid_config, "grid half width must be positive");
}

struct SpectralGrid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

SpectralGrid::SpectralGrid(const GridSpec& g) : spec_(g), plans_(std::make_unique<Plans>()) {
  g.validate();
  const int dims[3] = {g.n, g.n, g.n};
  {
    std::vector<double> rbuf(g.size());
    std::vector<cplx> cbuf(g.spectral_size());
    auto* c = reinterpret_cast<fftw_complex*>(cbuf.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->r2c = fftw_plan_dft_r2c(g.d, dims, rbuf.data(), c, flags);
    plans_->c2r = fftw_plan_dft_c2r(g.d, dims, c, rbuf.data(), flags);
  }
  if (!plans_->r2c || !plans_->c2r) throw Error(ErrorKind::numerical, "FFTW planning failed");

  // Distinct |k|² values; the half axis runs over 0..n/2 and the others over signed k.
  const int h = g.n / 2 + 1;
  const std::size_t m = g.spectral_size();
  std::vector<long> ksq(m);
  auto signed_k = [n = g.n](int j) { return j < n / 2 ? j : j - n; };
  for (std::size_t idx = 0; idx < m; ++idx) {
    std::size_t rest = idx;
    const int last = static_cast<int>(rest % h);
    rest /= h;
    long s = static_cast<long>(last) * last;
    for (int a = 0; a < g.d - 1; ++a) {
      const long k = signed_k(static_cast<int>(rest % g.n));
      rest /= g.n;
      s += k * k;
    }
    ksq[idx] = s;
  }
  std::map<long, int> slot;
  for (long s : ksq) slot.emplace(s, 0);
  int next = 0;
  const double unit = g.frequency_unit();
  for (auto& [s, i] : slot) {
    i = next++;
    radii_.push_back(unit * std::sqrt(static_cast<double>(s)));
  }
  radius_index_.resize(m);
  weight_.resize(m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    radius_index_[idx] = slot[ksq[idx]];
    const int last = static_cast<int>(idx % h);
    weight_[idx] = (last == 0 || last == g.n / 2) ? 1.0 : 2.0;
  }
}

SpectralGrid::~SpectralGrid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->r2c) fftw_destroy_plan(plans_->r2c);
  if (plans_->c2r) fftw_destroy_plan(plans_->c2r);
}

std::vector<cplx> SpectralGrid::forward(const std::vector<double>& f) const {
  if (f.size() != spec_.size()) throw Error(ErrorKind::invalid_config, "field size does not match grid");
  std::vector<double> in(f);
  std::vector<cplx> out(spec_.spectral_size());
  fftw_execute_dft_r2c(plans_->r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> SpectralGrid::inverse(const std::vector<cplx>& F) const {
  if (F.size() != spec_.spectral_size()) throw Error(ErrorKind::invalid_config, "spectrum size does not match grid");
  std::vector<cplx> in(F);
  std::vector<double> out(spec_.size());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(spec_.size());
  for (double& x : out) x *= scale;
  return out;
}

double SpectralGrid::spectral_square_sum(const std::vector<cplx>& F, int derivative_order) const {
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    double w = weight_[i] * std::norm(F[i]);
    if (derivative_order > 0) w *= std::pow(radii_[radius_index_[i]], 2 * derivative_order);
    s += w;
  }
  return s * spec_.cell_volume() / static_cast<double>(spec_.size());
}

std::shared_ptr<const SpectralGrid> SpectralGrid::get(const GridSpec& g) {
  static std::mutex m;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const SpectralGrid>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_tuple(g.d, g.n, g.half_width);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sg = std::make_shared<const SpectralGrid>(g);
  cache.emplace(key, sg);
  return sg;
}

}  // namespace sid
