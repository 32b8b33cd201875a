#include <array>
#include <cmath>
#include <numbers>

#include "sid/bessel.hpp"

namespace sid {

namespace {

// g = 7, n = 9
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx recip_gamma(cplx z) {
  cplx prod = 1.0;
  while (z.real() < 0.5) {
    prod *= z;
    z += 1.0;
  }
  if (prod == 0.0) return 0.0;
  return prod * std::exp(-log_gamma(z));
}

}  // namespace sid
