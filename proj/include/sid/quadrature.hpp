#pragma once

#include <vector>

namespace sid {

// Gauss-Legendre rule on [−1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Supported n: 2, 3, 5, 7, 10, 15, 20, 25, 30.
GaussRule gauss_legendre(int n);

}  // namespace sid
