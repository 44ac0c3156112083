#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hardy/hardy.hpp"
#include "oracles.hpp"

using namespace hardy;
using Catch::Approx;

namespace {
PowerPoly random_power(std::mt19937_64& rng, std::size_t width, std::uint32_t max_deg, std::size_t terms) {
  std::normal_distribution<double> g;
  PowerPoly p;
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> e(width);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_deg + 1));
    p.set(MultiIndex(e), cplx(g(rng), g(rng)));
  }
  return p;
}
}  // namespace

TEST_CASE("one-dimensional kernel") {
  for (double ph : {0.0, 1.0, 2.5}) CHECK(kernel_1d(std::polar(1.0, ph), 0.0) == Approx(1));
  CHECK(kernel_1d(1.0, 0.5) == Approx(3));
  const cplx z = std::polar(0.6, 0.9);
  double mean = 0;
  const int g = 512;
  for (int k = 0; k < g; ++k) mean += kernel_1d(std::polar(1.0, 2 * std::numbers::pi * k / g), z) / g;
  CHECK(mean == Approx(1).epsilon(1e-12));
  CHECK_THROWS_AS(kernel_1d(0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(kernel_1d(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("product kernel matches its Fourier series") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi), ur(0, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> om(3), z(3);
    std::vector<double> r(3), th(3), ph(3);
    double series = 1;
    for (int j = 0; j < 3; ++j) {
      th[j] = u(rng);
      ph[j] = u(rng);
      r[j] = ur(rng);
      om[j] = std::polar(1.0, th[j]);
      z[j] = std::polar(1.0, ph[j]);
      series *= oracle::poisson_series(th[j], r[j], ph[j], 60);
    }
    CHECK(kernel_m(om, z, RadiusVector(r)) == Approx(series).epsilon(1e-9));
  }
  std::vector<cplx> om{std::polar(1.0, 0.3)}, z{std::polar(1.0, 1.3)};
  CHECK(kernel_m(om, z, RadiusVector({0.0})) == Approx(1));
  CHECK(kernel_m(om, z, RadiusVector({0.4})) == Approx(kernel_1d(om[0], 0.4 * z[0])));
}

TEST_CASE("radius vectors") {
  CHECK_THROWS_AS(RadiusVector({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RadiusVector({-0.1}), std::invalid_argument);
  const RadiusVector r({0.5, 1.0 / 3});
  CHECK(r.power(MultiIndex{2, 1}) == Approx(1.0 / 12));
  CHECK((r * RadiusVector({0.5})).values()[0] == Approx(0.25));
}

TEST_CASE("exact convolution examples") {
  CHECK(poisson_convolve_exact(PowerPoly{{MultiIndex{1}, 1.0}}, RadiusVector({0.5})) ==
        PowerPoly{{MultiIndex{1}, 0.5}});
  const PowerPoly c{{MultiIndex{}, cplx(2, 1)}};
  CHECK(poisson_convolve_exact(c, RadiusVector({0.9, 0.1})) == c);
  const PowerPoly p = poisson_convolve_exact(PowerPoly{{MultiIndex{2, 1}, 1.0}}, RadiusVector({0.5, 1.0 / 3}));
  CHECK(p.at(MultiIndex{2, 1}).entries()[0].real() == Approx(1.0 / 12));
  CHECK_THROWS_AS(poisson_convolve_exact(PowerPoly{{MultiIndex{0, 1}, 1.0}}, RadiusVector({0.5})),
                  std::invalid_argument);
}

TEST_CASE("numeric convolution of z1 at 256 nodes") {
  const PowerPoly got = poisson_convolve_numeric(PowerPoly{{MultiIndex{1}, 1.0}}, RadiusVector({0.5}), 256);
  CHECK(max_coeff_gap(got, PowerPoly{{MultiIndex{1}, 0.5}}) < 1e-9);
}

TEST_CASE("numeric convolution agrees with coefficient scaling") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    // aliasing error ~ r^(G - degree)
    const std::size_t w = 1 + trial % 3;
    const PowerPoly p = random_power(rng, w, w == 3 ? 4 : 8, 12);
    std::uniform_real_distribution<double> ur(0, w == 3 ? 0.6 : 0.8);
    std::vector<double> r(w);
    for (auto& x : r) x = ur(rng);
    const std::size_t g = w == 3 ? 64 : 128;
    const PowerPoly exact = poisson_convolve_exact(p, RadiusVector(r));
    CHECK(max_coeff_gap(exact, poisson_convolve_numeric(p, RadiusVector(r), g)) < 1e-9);
  }
}

TEST_CASE("numeric convolution with vector coefficients and r = 0") {
  const CoeffSpaceSpec s(2, NormKind::L1);
  PowerPoly p(s);
  p.set(MultiIndex{}, CoeffVector(s, {1.0, 2.0}));
  p.set(MultiIndex{1, 2}, CoeffVector(s, {cplx(0, 1), 3.0}));
  const PowerPoly zero = poisson_convolve_numeric(p, RadiusVector({0.0, 0.0}), 16);
  PowerPoly expect(s);
  expect.set(MultiIndex{}, CoeffVector(s, {1.0, 2.0}));
  CHECK(max_coeff_gap(zero, expect) < 1e-12);
  CHECK(max_coeff_gap(poisson_convolve_exact(p, RadiusVector({0.0, 0.0})), expect) == 0);
}

TEST_CASE("numeric convolution guards") {
  const PowerPoly p{{MultiIndex{5}, 1.0}};
  CHECK_THROWS_AS(poisson_convolve_numeric(p, RadiusVector({0.5}), 11), std::invalid_argument);
  CHECK_NOTHROW(poisson_convolve_numeric(p, RadiusVector({0.5}), 12));
  const PowerPoly wide{{MultiIndex{0, 0, 0, 0, 1}, 1.0}};
  CHECK_THROWS_AS(poisson_convolve_numeric(wide, RadiusVector({.1, .1, .1, .1, .1}), 4), std::invalid_argument);
}

TEST_CASE("convolution is linear and a semigroup") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const PowerPoly a = random_power(rng, 3, 5, 10), b = random_power(rng, 3, 5, 10);
    const RadiusVector r({0.3, 0.7, 0.5}), s({0.9, 0.2, 0.6});
    CHECK(max_coeff_gap(poisson_convolve_exact(a + b * cplx(2, -1), r),
                        poisson_convolve_exact(a, r) + poisson_convolve_exact(b, r) * cplx(2, -1)) < 1e-12);
    CHECK(max_coeff_gap(poisson_convolve_exact(poisson_convolve_exact(a, r), s), poisson_convolve_exact(a, r * s)) <
          1e-15 * std::max(1.0, max_coeff_norm(a)));
  }
}

TEST_CASE("contraction in L2 and L4") {
  std::mt19937_64 rng(30);
  const PowerPoly p = random_power(rng, 3, 3, 10);
  const auto two = contraction_check(p, RadiusVector({0.5, 0.5, 0.5}), 2.0, {});
  CHECK(two.lhs.method == NormMethod::ExactParseval);
  CHECK(two.holds());
  const auto zero = contraction_check(p, RadiusVector({0, 0, 0}), 2.0, {});
  CHECK(zero.lhs.value == Approx(p.at(MultiIndex{}).norm()).margin(1e-15));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto four = contraction_check(p, RadiusVector({0.8, 0.4, 0.6}), 4.0, {4000, seed, SampleScheme::IidUniform});
    CHECK(four.lhs.method == NormMethod::TorusMc);
    CHECK(four.holds());
  }
}
