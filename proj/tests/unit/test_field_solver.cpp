#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "sid/error.hpp"
#include "sid/field_io.hpp"
#include "sid/field_solver.hpp"
#include "sid/presets.hpp"
#include "sid/quadrature.hpp"

using namespace sid;

namespace {

FieldState gaussian(const GridSpec& g, double sigma = 1.0) {
  PresetSpec p;
  p.width = sigma;
  return make_preset(g, p).state;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((GridSpec{1, 12, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{4, 16, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{1, 4, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{1, 16, 0.0}.validate()), Error);
  CHECK_NOTHROW((GridSpec{3, 8, 1.0}.validate()));
}

TEST_CASE("radius lattice") {
  const GridSpec g{3, 8, 2.0};
  SpectralGrid sg(g);
  CHECK(sg.radius_index().size() == 8u * 8u * 5u);
  // Distinct a² + b² + c² with |a|, |b|, |c| ≤ 4.
  CHECK(sg.radii().size() == 32u);
  CHECK(sg.radii().front() == 0.0);
  CHECK(sg.max_frequency() == doctest::Approx(g.frequency_unit() * std::sqrt(48.0)));
  double total = 0.0;
  for (double w : sg.parseval_weight()) total += w;
  CHECK(total == doctest::Approx(512.0));
}

TEST_CASE("fft round trip") {
  const GridSpec g{2, 32, 5.0};
  const FieldState s = gaussian(g, 1.3);
  auto sg = SpectralGrid::get(g);
  CHECK(max_abs_diff(sg->inverse(sg->forward(s.v)), s.v) < 1e-14);
}

TEST_CASE("norm quadrature") {
  SUBCASE("constant field") {
    for (int d = 1; d <= 3; ++d) {
      const GridSpec g{d, 16, 3.0};
      FieldState s = FieldState::zeros(g);
      std::fill(s.v.begin(), s.v.end(), -2.5);
      CHECK(norms(s).l2 == doctest::Approx(2.5 * std::pow(6.0, 0.5 * d)).epsilon(1e-14));
      CHECK(norms(s).hdot1 < 1e-12);
    }
  }
  SUBCASE("plane wave") {
    const GridSpec g{1, 64, 10.0};
    PresetSpec p;
    p.kind = DataPreset::plane_wave;
    p.wavenumber = 3;
    const NormReport n = norms(make_preset(g, p).state);
    CHECK(n.hdot1 == doctest::Approx(3.0 * std::numbers::pi / 10.0 * n.l2).epsilon(1e-12));
  }
  SUBCASE("gaussian") {
    const NormReport n = norms(gaussian(GridSpec{1, 512, 20.0}));
    CHECK(std::abs(n.l2 - 1.1195151349202476285) < 1e-10);
    CHECK(n.h1 * n.h1 == doctest::Approx(n.l2 * n.l2 + n.hdot1 * n.hdot1).epsilon(1e-12));
  }
  SUBCASE("parseval") {
    for (int d = 1; d <= 3; ++d) {
      const GridSpec g{d, 16, 4.0};
      const FieldState s = gaussian(g, 1.1);
      auto sg = SpectralGrid::get(g);
      const double spec = std::sqrt(sg->spectral_square_sum(sg->forward(s.v)));
      CHECK(spec == doctest::Approx(l2_norm(g, s.v)).epsilon(1e-12));
    }
  }
  SUBCASE("lebesgue norms") {
    const GridSpec g{1, 8, 4.0};
    FieldState s = FieldState::zeros(g);
    s.v[3] = -2.0;
    CHECK(lr_norm(g, s.v, INFINITY) == 2.0);
    CHECK(lr_norm(g, s.v, 10.0) == doctest::Approx(2.0 * std::pow(1.0, 0.1)));
  }
}

TEST_CASE("free wave group") {
  const GridSpec g{1, 256, 40.0};
  FieldState s = gaussian(g, 1.5);
  s.vt = gaussian(g, 2.0).v;
  CHECK(max_abs_diff(free_wave_evolve(s, 0.0).v, s.v) == 0.0);
  const FieldState there = free_wave_evolve(s, 7.3);
  const FieldState back = free_wave_evolve(there, 0.0);
  CHECK(max_abs_diff(back.v, s.v) < 1e-10);
  CHECK(max_abs_diff(back.vt, s.vt) < 1e-10);
  CHECK(norms(there).energy_pair == doctest::Approx(norms(s).energy_pair).epsilon(1e-10));
}

TEST_CASE("free wave single mode follows the lattice dispersion relation") {
  const GridSpec g{1, 32, 5.0};
  PresetSpec p;
  p.kind = DataPreset::plane_wave;
  p.wavenumber = 2;
  const FieldState s = make_preset(g, p).state;
  const double xi = 2.0 * std::numbers::pi / 5.0;
  const FieldState e = free_wave_evolve(s, 3.7);
  std::vector<double> expect(s.v);
  for (double& x : expect) x *= std::cos(3.7 * xi);
  CHECK(max_abs_diff(e.v, expect) < 1e-13);
}

TEST_CASE("linear evolution") {
  const GridSpec g{1, 512, 64.0};
  FieldState s = gaussian(g, 1.0);
  s.vt = gaussian(g, 3.0).v;
  SUBCASE("massless reduces to the free wave") {
    const FieldState a = linear_evolve(coefficients_from_mu(0.0, 1), s, 13.0);
    const FieldState b = free_wave_evolve(s, 13.0);
    CHECK(max_abs_diff(a.v, b.v) < 1e-9);
    CHECK(max_abs_diff(a.vt, b.vt) < 1e-9);
  }
  SUBCASE("zero step is the identity") {
    const FieldState a = linear_evolve(coefficients_from_mu(0.3, 1), s, 0.0);
    CHECK(max_abs_diff(a.v, s.v) < 1e-12);
  }
  SUBCASE("two steps equal one step") {
    const CoefficientSet c = coefficients_from_mu(0.1875, 1);
    const FieldState one = linear_evolve(c, s, 10.0);
    const FieldState two = linear_evolve(c, linear_evolve(c, s, 5.0), 10.0);
    CHECK(max_abs_diff(one.v, two.v) < 1e-8);
    CHECK(max_abs_diff(one.vt, two.vt) < 1e-8);
  }
  SUBCASE("oracle strategy agrees") {
    const CoefficientSet c = coefficients_from_mu(0.5, 1);
    const GridSpec small{1, 64, 16.0};
    FieldState q = gaussian(small, 1.5);
    const FieldState a = linear_evolve(c, q, 6.0);
    const FieldState b = linear_evolve(c, q, 6.0, KernelStrategy::ode_oracle);
    CHECK(max_abs_diff(a.v, b.v) < 1e-8);
  }
}

TEST_CASE("energy stays bounded by a fixed multiple of the data norm") {
  const GridSpec g{1, 1024, 256.0};
  PresetSpec p;
  p.kind = DataPreset::bump;
  p.width = 4.0;
  const FieldState s = make_preset(g, p).state;
  const double data = h1l2_pair_norm(s);
  for (double mu : {0.1, 0.25, 1.0}) {
    RadialPropagator prop(coefficients_from_mu(mu, 1), SpectralGrid::get(g), 0.0);
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) worst = std::max(worst, norms(prop.evolve(s, 10.0 * i)).energy_pair / data);
    CAPTURE(mu);
    CHECK(worst <= 10.0);
  }
}

TEST_CASE("finite propagation speed keeps the support inside r0 + t") {
  const GridSpec g{1, 4096, 64.0};
  PresetSpec p;
  p.kind = DataPreset::bump;
  p.width = 6.0;
  const FieldState s = make_preset(g, p).state;
  const double t = 25.0;
  const FieldState e = linear_evolve(coefficients_from_mu(0.1875, 1), s, t);
  double outside = 0.0;
  for (int j = 0; j < g.n; ++j)
    if (std::abs(g.coordinate(j)) > 6.0 + t + 0.5) outside += e.v[j] * e.v[j] * g.dx();
  CHECK(std::sqrt(outside) <= 1e-10 * l2_norm(g, s.v));
}

TEST_CASE("liouville transform") {
  const GridSpec g{1, 64, 8.0};
  FieldState u = gaussian(g);
  u.vt = gaussian(g, 2.0).v;
  const FieldState v = liouville(u, 0.7, LiouvilleDirection::to_kg);
  for (int i = 0; i < g.n; ++i) {
    CHECK(v.v[i] == u.v[i]);
    CHECK(v.vt[i] == doctest::Approx(0.35 * u.v[i] + u.vt[i]).epsilon(1e-15));
  }
  u.t = 12.5;
  const FieldState id = liouville(u, 0.0, LiouvilleDirection::to_kg);
  CHECK(max_abs_diff(id.vt, u.vt) == 0.0);
  const FieldState rt = liouville(liouville(u, 1.3, LiouvilleDirection::to_dw), 1.3, LiouvilleDirection::to_kg);
  CHECK(max_abs_diff(rt.v, u.v) < 1e-12);
  CHECK(max_abs_diff(rt.vt, u.vt) < 1e-12);
}

TEST_CASE("space-time norms") {
  const GridSpec g{1, 16, 2.0};
  FieldState s = FieldState::zeros(g);
  std::fill(s.v.begin(), s.v.end(), 1.0);
  std::vector<FieldState> samples;
  for (int i = 0; i <= 10; ++i) {
    s.t = 0.3 * i;
    samples.push_back(s);
  }
  CHECK(spacetime_norm(samples, 5.0, 10.0) == doctest::Approx(std::pow(4.0, 0.1) * std::pow(3.0, 0.2)).epsilon(1e-13));
  CHECK_THROWS_AS(spacetime_norm({}, 5.0, 10.0), Error);
  samples[3].t = 1.0;
  CHECK_THROWS_AS(spacetime_norm(samples, 5.0, 10.0), Error);
}

TEST_CASE("gauss legendre rules integrate polynomials exactly") {
  for (int n : {2, 3, 5, 20}) {
    const GaussRule r = gauss_legendre(n);
    REQUIRE(r.x.size() == static_cast<std::size_t>(n));
    double s0 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      s0 += r.w[i];
      s2 += r.w[i] * r.x[i] * r.x[i];
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gauss_legendre(4), Error);
}

TEST_CASE("mass-term increment") {
  const GridSpec g{1, 16, 4.0 * std::numbers::pi};
  PresetSpec p;
  p.kind = DataPreset::plane_wave;
  p.wavenumber = 4;  // ξ = 1
  const FieldState mode = make_preset(g, p).state;
  auto constant = [&](double s) {
    FieldState st = mode;
    st.t = s;
    return st;
  };
  SUBCASE("massless is zero") {
    const FieldState z = duhamel_tail(coefficients_from_mu(0.0, 1), constant, 0.0, 10.0);
    CHECK(l2_norm(g, z.v) == 0.0);
  }
  SUBCASE("single mode matches scalar quadrature") {
    const FieldState z = duhamel_tail(coefficients_from_mu(0.25, 1), constant, 0.0, 10.0);
    const double a = 0.087690777170661165947, b = -0.093851724027173097771;
    for (int j = 0; j < g.n; ++j) {
      CHECK(std::abs(z.v[j] - a * mode.v[j]) < 1e-8);
      CHECK(std::abs(z.vt[j] - b * mode.v[j]) < 1e-8);
    }
  }
  SUBCASE("too few nodes is reported") {
    const GridSpec fine{1, 1024, 4.0};
    auto src = [&](double) { return std::vector<double>(fine.size(), 0.0); };
    CHECK_THROWS_AS(wave_integral(fine, src, 0.0, 10.0, QuadratureSpec{20, 0.5}), Error);
  }
}

TEST_CASE("kernel and free-wave-plus-source formulations agree") {
  const GridSpec g{1, 512, 64.0};
  const FieldState s = gaussian(g);
  for (double mu : {0.1, 0.25}) {
    const CoefficientSet c = coefficients_from_mu(mu, 1);
    RadialPropagator prop(c, SpectralGrid::get(g), 0.0);
    auto traj = [&](double t) { return prop.evolve(s, t); };
    const double T = 20.0;
    FieldState profile = duhamel_tail(c, traj, 0.0, T);
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      profile.v[i] += s.v[i];
      profile.vt[i] += s.vt[i];
    }
    const FieldState via_wave = free_wave_evolve(profile, T);
    const FieldState direct = prop.evolve(s, T);
    CHECK(h1l2_pair_norm(difference(via_wave, direct)) <= 1e-7 * h1l2_pair_norm(direct));
  }
}

TEST_CASE("snapshot and norm log round trip") {
  const GridSpec g{2, 16, 3.0};
  FieldState s = gaussian(g);
  s.vt = gaussian(g, 0.5).v;
  s.t = 4.25;
  const std::string path = temp_path("sid_snapshot_test.bin");
  write_snapshot(path, s);
  const FieldState r = read_snapshot(path);
  CHECK(r.grid == g);
  CHECK(r.t == 4.25);
  CHECK(r.v == s.v);
  CHECK(r.vt == s.vt);

  // Rewrite the file byte-swapped and read it back.
  std::ifstream in(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();
  auto flip = [&](std::size_t off, std::size_t w) { std::reverse(bytes.begin() + off, bytes.begin() + off + w); };
  flip(8, 4);
  flip(12, 4);
  flip(16, 4);
  flip(20, 8);
  flip(28, 8);
  for (std::size_t off = 36; off < bytes.size(); off += 8) flip(off, 8);
  const std::string swapped = temp_path("sid_snapshot_swapped.bin");
  std::ofstream(swapped, std::ios::binary).write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  const FieldState q = read_snapshot(swapped);
  CHECK(q.v == s.v);
  CHECK(q.t == 4.25);

  const std::string csv = temp_path("sid_norms_test.csv");
  write_norm_log(csv, {{0.0, norms(s)}, {1.5, norms(r)}});
  const auto rows = read_norm_log(csv);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].t == 1.5);
  CHECK(rows[0].norms.energy_pair == norms(s).energy_pair);
  std::remove(path.c_str());
  std::remove(swapped.c_str());
  std::remove(csv.c_str());
}

TEST_CASE("presets and horizon") {
  const GridSpec g{1, 256, 100.0};
  PresetSpec p;
  p.kind = DataPreset::multiscale;
  p.t_max = 20.0;
  const InitialData d = make_preset(g, p);
  CHECK(d.support_radius == 70.0);
  CHECK_NOTHROW(check_horizon(g, d.support_radius, 20.0));
  try {
    check_horizon(g, d.support_radius, 40.0);
    FAIL("expected horizon violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::horizon_violation);
  }
  p.kind = DataPreset::gaussian;
  p.slot = DataSlot::velocity;
  const InitialData v = make_preset(g, p);
  CHECK(l2_norm(g, v.state.v) == 0.0);
  CHECK(l2_norm(g, v.state.vt) > 0.0);
  CHECK(h1l2_pair_norm(normalize_pair(v.state)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_preset("square"), Error);
}
