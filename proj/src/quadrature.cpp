#include "sid/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <string>

#include "sid/error.hpp"

namespace sid {

namespace {

template <int N>
GaussRule expand() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  GaussRule r;
  // Boost stores the non-negative half; the zero node (odd N) comes first.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
    } else {
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
    }
  }
  return r;
}

}  // namespace

GaussRule gauss_legendre(int n) {
  switch (n) {
    case 2: return expand<2>();
    case 3: return expand<3>();
    case 5: return expand<5>();
    case 7: return expand<7>();
    case 10: return expand<10>();
    case 15: return expand<15>();
    case 20: return expand<20>();
    case 25: return expand<25>();
    case 30: return expand<30>();
    default: throw Error(ErrorKind::invalid_config, "unsupported Gauss-Legendre node count " + std::to_string(n));
  }
}

}  // namespace sid
