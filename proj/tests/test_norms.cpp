#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hardy/hardy.hpp"
#include "oracles.hpp"

using namespace hardy;
using Catch::Approx;

namespace {
const DirichletPoly one_plus_two{{1, 1.0}, {2, 1.0}};
}

TEST_CASE("closed-form H2 norm") {
  CHECK(norm_h2_exact(DirichletPoly{{1, 3.0}, {2, 4.0}}).value == Approx(5));
  const CoeffSpaceSpec c2(2, NormKind::L2);
  DirichletPoly v(c2);
  v.set(2, CoeffVector(c2, {1.0, 1.0}));
  CHECK(norm_h2_exact(v).value == Approx(std::sqrt(2.0)));
  CHECK(norm_h2_exact(DirichletPoly{}).value == 0);
  CHECK(norm_h2_exact(DirichletPoly{}).method == NormMethod::ExactParseval);
}

TEST_CASE("closed-form H2 norm refuses non-Euclidean coefficients") {
  const CoeffSpaceSpec li(2, NormKind::LInf);
  DirichletPoly v(li);
  v.set(2, CoeffVector(li, {1.0, 1.0}));
  try {
    norm_h2_exact(v);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("no closed-form") != std::string::npos);
    CHECK(std::string(e.what()).find("norm_hp_mc") != std::string::npos);
  }
}

TEST_CASE("Monte Carlo norm of 1 + 2^-s at p = 4") {
  const SamplerConfig cfg{20000, 1, SampleScheme::IidUniform};
  const NormEstimate e = norm_hp_mc(one_plus_two, 4.0, cfg);
  const double exact = std::pow(6.0, 0.25);
  CHECK(exact == Approx(oracle::one_plus_z_norm(4.0)).epsilon(1e-12));
  CHECK(std::abs(e.value - exact) <= 3 * e.std_error);
  CHECK(e.method == NormMethod::TorusMc);
  CHECK(e.samples == 20000);
  CHECK(e.seed == 1);
}

TEST_CASE("Monte Carlo at p = 2 agrees with Parseval") {
  const DirichletPoly d{{1, 3.0}, {2, 4.0}};
  for (auto scheme : {SampleScheme::IidUniform, SampleScheme::KroneckerQmc}) {
    const NormEstimate e = norm_hp_mc(d, 2.0, {10000, 0, scheme});
    CHECK(std::abs(e.value - 5.0) <= 3 * e.std_error);
  }
}

TEST_CASE("constant series are answered exactly") {
  const NormEstimate e = norm_hp_mc(DirichletPoly{{1, cplx(0, -2.5)}}, 3.0, {});
  CHECK(e.value == 2.5);
  CHECK(e.std_error == 0);
  CHECK(e.method == NormMethod::ExactParseval);
  CHECK(norm_hp_mc(DirichletPoly{{2, 1.0}}, 7.0, {}).value == 1.0);
}

TEST_CASE("Monte Carlo is reproducible and seed sensitive") {
  const DirichletPoly d = gallery("random_pm1", 40, {0.51, 2});
  const NormEstimate a = norm_hp_mc(d, 3.0, {5000, 4, SampleScheme::IidUniform});
  const NormEstimate b = norm_hp_mc(d, 3.0, {5000, 4, SampleScheme::IidUniform});
  const NormEstimate c = norm_hp_mc(d, 3.0, {5000, 5, SampleScheme::IidUniform});
  CHECK(a.value == b.value);
  CHECK(a.value != c.value);
}

TEST_CASE("Monte Carlo matches tensor quadrature for a two-variable polynomial") {
  // P = 1 + z1 + z2 - 0.5 z1 z2, p = 4 is exact on a grid with G > 8
  const DirichletPoly d{{1, 1.0}, {2, 1.0}, {3, 1.0}, {6, -0.5}};
  const oracle::Poly ref{{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 1}, -0.5}};
  const double exact = oracle::lp_norm(ref, 2, 4.0, 16);
  const NormEstimate e = norm_hp_mc(d, 4.0, {40000, 3, SampleScheme::IidUniform});
  CHECK(std::abs(e.value - exact) <= 3 * e.std_error);
}

TEST_CASE("invalid exponents and samplers") {
  CHECK_THROWS_AS(norm_hp_mc(one_plus_two, 0.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(norm_hp_mc(one_plus_two, 2.0, {1, 0, SampleScheme::IidUniform}), std::invalid_argument);
  CHECK_THROWS_AS(norm_hp_mc(one_plus_two, 2.0, {0, 0, SampleScheme::IidUniform}), std::invalid_argument);
  CHECK_THROWS_AS(parse_sample_scheme("sobol"), std::invalid_argument);
  CHECK(parse_sample_scheme("KRONECKER_QMC") == SampleScheme::KroneckerQmc);
}

TEST_CASE("lattice sup norm") {
  CHECK(norm_hinf_grid(one_plus_two, 16).value == Approx(2));
  CHECK(norm_hinf_grid(DirichletPoly{{2, 1.0}}, 16).value == Approx(1));
  CHECK(norm_hinf_grid(DirichletPoly{{1, 1.0}, {2, -1.0}}, 16).value == Approx(2));
  CHECK(norm_hinf_grid(DirichletPoly{{1, 1.0}, {2, 1.0}, {3, 1.0}}, 8).value == Approx(3));
  CHECK(norm_hinf_grid(one_plus_two, 16).method == NormMethod::TorusGridSup);
}

TEST_CASE("lattice sup norm is monotone under refinement by multiples") {
  const DirichletPoly d = gallery("random_unimodular", 12, {0.51, 1});
  double prev = 0;
  for (std::size_t g : {2, 4, 8, 16}) {
    const double v = norm_hinf_grid(d, g).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(norm_hinf_grid(gallery("zeta_shift", 30), 4, 8), std::invalid_argument);
}

TEST_CASE("vertical mean") {
  CHECK(vertical_mean(DirichletPoly{{2, 1.0}}, 3.0, 50, 1001).value == Approx(1).epsilon(1e-12));
  const auto two = vertical_mean_diagnostic(one_plus_two, 2.0, 1000, 10);
  REQUIRE(two.size() == 3);
  CHECK(two[2].horizon == 4000);
  CHECK(std::abs(two[2].value - std::sqrt(2.0)) < std::abs(two[0].value - std::sqrt(2.0)) + 1e-3);
  CHECK(two[2].value == Approx(std::sqrt(2.0)).epsilon(1e-3));
  const DirichletPoly three{{1, 1.0}, {2, 1.0}, {3, 1.0}};
  CHECK(vertical_mean(three, 2.0, 1e4, 200001).value == Approx(std::sqrt(3.0)).epsilon(1e-3));
  CHECK(vertical_mean(one_plus_two, 2.0, 10, 101).method == NormMethod::VerticalMean);
  CHECK_THROWS_AS(vertical_mean(one_plus_two, 2.0, 0, 101), std::invalid_argument);
  CHECK_THROWS_AS(vertical_mean(one_plus_two, 2.0, 10, 1), std::invalid_argument);
}

TEST_CASE("vertical sup") {
  CHECK(vertical_sup(one_plus_two, 10, 101).value == Approx(2));  // node at t = 0
  CHECK(vertical_sup(DirichletPoly{{2, 1.0}}, 10, 101).value == Approx(1));
  const DirichletPoly three{{1, 1.0}, {2, 1.0}, {3, 1.0}};
  CHECK(vertical_sup(three, 1e4, 200001).value > 2.95);
  CHECK(vertical_sup(three, 1e4, 200001).value <= 3.0 + 1e-12);
}

TEST_CASE("power means grow with p toward the sup norm") {
  const std::vector<double> ps{2, 4, 8, 16, 32};
  const auto rows = norm_p_limit_check(one_plus_two, ps, {20000, 0, SampleScheme::IidUniform});
  REQUIRE(rows.size() == ps.size());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].estimate.value >= rows[i - 1].estimate.value);
  for (const auto& r : rows) CHECK(r.estimate.value == Approx(oracle::one_plus_z_norm(r.p)).epsilon(0.03));
  CHECK(oracle::one_plus_z_norm(32) == Approx(oracle::one_plus_z_even_norm(16)).epsilon(1e-10));

  const auto constant = norm_p_limit_check(DirichletPoly{{1, -4.0}}, ps, {});
  for (const auto& r : constant) CHECK(r.estimate.value == 4.0);
  const auto mono = norm_p_limit_check(DirichletPoly{{2, 1.0}}, ps, {});
  for (const auto& r : mono) CHECK(r.estimate.value == 1.0);
  CHECK_THROWS_AS(norm_p_limit_check(one_plus_two, std::vector<double>{4, 2}, {}), std::invalid_argument);
}

TEST_CASE("norm_auto picks the route") {
  CHECK(norm_auto(one_plus_two, 2.0, {}).method == NormMethod::ExactParseval);
  CHECK(norm_auto(one_plus_two, kInfinity, {}).method == NormMethod::TorusGridSup);
  CHECK(norm_auto(one_plus_two, 3.0, {}).method == NormMethod::TorusMc);
  CHECK(norm_auto(gallery("c0", 4), 2.0, {}).method == NormMethod::TorusMc);
}

TEST_CASE("c0 gallery entry has unit coefficients and unit sup norm") {
  for (std::uint64_t size : {1, 3, 8, 12}) {
    const DirichletPoly d = gallery("c0", size);
    CHECK(d.size() == size);
    for (const auto& [n, a] : d) CHECK(a.norm() == 1.0);
    CHECK(norm_hinf_grid(d, 8).value == Approx(1));
  }
  const DirichletPoly c3 = gallery("c0", 3);
  CHECK(c3.space().dim == 3);
  CHECK(c3.space().norm == NormKind::LInf);
  CHECK(c3.at(2) == CoeffVector::unit(c3.space(), 1));
}

TEST_CASE("gallery entries") {
  const DirichletPoly z = gallery("zeta_shift", 10);
  for (const auto& [n, a] : z) CHECK(a.entries()[0].real() == Approx(std::pow(double(n), -0.51)));
  CHECK(gallery("random_pm1", 50, {0.51, 3}) == gallery("random_pm1", 50, {0.51, 3}));
  CHECK_FALSE(gallery("random_pm1", 50, {0.51, 3}) == gallery("random_pm1", 50, {0.51, 4}));
  for (const auto& [n, a] : gallery("random_unimodular", 20)) CHECK(a.norm() == Approx(1));
  CHECK_THROWS_AS(gallery("unknown", 3), std::invalid_argument);
  CHECK_THROWS_AS(gallery("c0", 0), std::invalid_argument);
}
