#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sid/error.hpp"
#include "sid/params.hpp"

using namespace sid;

TEST_CASE("free wave coefficients give order one half") {
  const CoefficientSet c = derive_coefficients(2.0, 0.0, 3);
  CHECK(c.mu == 0.0);
  CHECK(c.nu == cplx(0.5, 0.0));
}

TEST_CASE("quarter mass gives order zero") {
  const CoefficientSet c = derive_coefficients(0.0, 0.25, 3);
  CHECK(c.mu == 0.25);
  CHECK(c.nu == cplx(0.0, 0.0));
}

TEST_CASE("mass one half gives imaginary order i/2") {
  const CoefficientSet c = derive_coefficients(0.0, 0.5, 3);
  CHECK(c.nu.real() == 0.0);
  CHECK(c.nu.imag() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rate predictions") {
  SUBCASE("mu = 3/16 with mu1 = 1") {
    const RatePrediction r = predict_rates(derive_coefficients(1.0, -1.0 / 16.0, 3));
    CHECK(r.linear_order == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(r.nonlinear_order == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(r.dw_shift == -0.5);
    CHECK(r.alpha == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_FALSE(r.has_log);
  }
  SUBCASE("mu = 0") {
    const RatePrediction r = predict_rates(coefficients_from_mu(0.0, 3));
    CHECK(r.linear_order == 0.0);
    CHECK_FALSE(r.has_log);
  }
  SUBCASE("mu = 1/4") {
    const RatePrediction r = predict_rates(derive_coefficients(1.0, 0.0, 3));
    CHECK(r.linear_order == -0.5);
    CHECK(r.has_log);
  }
  SUBCASE("small damping, massless") {
    const double mu1 = 0.05;
    const RatePrediction r = predict_rates(derive_coefficients(mu1, -mu1 * (2.0 - mu1) / 4.0, 3));
    CHECK(r.linear_order == 0.0);
    CHECK(r.nonlinear_order == 0.0);
    CHECK(r.alpha == 1.0);
  }
}

TEST_CASE("admissible pairs") {
  const double inf = std::numeric_limits<double>::infinity();
  Admissibility a = check_admissible_pair(5.0, 10.0, 3);
  CHECK(a.admissible);
  CHECK(a.gamma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(check_admissible_pair(2.0, inf, 3).admissible);
  a = check_admissible_pair(inf, 2.0, 3);
  CHECK(a.admissible);
  CHECK(a.gamma == 0.0);
  CHECK_FALSE(check_admissible_pair(2.0, 10.0, 3).admissible);
  CHECK_THROWS_AS(check_admissible_pair(1.5, 2.0, 3), Error);
}

TEST_CASE("invalid coefficient inputs") {
  CHECK_THROWS_AS(derive_coefficients(0.0, 0.0, 0), Error);
  CHECK_THROWS_AS(derive_coefficients(std::nan(""), 0.0, 3), Error);
  CHECK_THROWS_AS(derive_coefficients(0.0, 0.0, 3, 2), Error);
}

TEST_CASE("property: derived mass is reproducible and nu^2 + mu = 1/4") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u1(-1.0, 4.0), u2(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double m1 = u1(rng), m2 = u2(rng);
    const CoefficientSet c = derive_coefficients(m1, m2, 3);
    CHECK(c.mu == m1 * (2.0 - m1) / 4.0 + m2);
    const cplx s = c.nu * c.nu + c.mu;
    CHECK(std::abs(s - 0.25) <= 1e-14 * std::max(1.0, std::abs(c.mu)));
    if (c.mu > 0.0) CHECK(c.re_nu() < 0.5);
  }
}

TEST_CASE("property: linear order decreases strictly in mu on [0, 1/4]") {
  double prev = predict_rates(coefficients_from_mu(0.0, 3)).linear_order;
  for (int i = 1; i <= 100; ++i) {
    const double cur = predict_rates(coefficients_from_mu(0.0025 * i, 3)).linear_order;
    CHECK(cur < prev);
    prev = cur;
  }
}
