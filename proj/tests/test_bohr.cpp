#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hardy/hardy.hpp"
#include "oracles.hpp"

using namespace hardy;
using Catch::Approx;

TEST_CASE("prime table agrees with trial division") {
  const auto ref = oracle::first_primes(2000);
  for (std::size_t j = 0; j < ref.size(); ++j) REQUIRE(nth_prime(j) == ref[j]);
  CHECK(prime_count(100) == 25);
  CHECK(prime_count(1'000'000) == 78498);
}

TEST_CASE("prime table extends past its initial sieve") {
  PrimeTable t;
  CHECK(t.limit() == PrimeTable::kInitialLimit);
  CHECK(t.nth(6542) == 65537);  // first prime above 2^16
  CHECK(t.limit() > PrimeTable::kInitialLimit);
  CHECK(t.count_upto(10'000'000) == 664579);
}

TEST_CASE("prime table respects its cap") {
  PrimeTable t(100'000);
  CHECK(t.cap() == 100'000);
  CHECK(t.count_upto(100'000) == 9592);
  CHECK_THROWS_AS(t.ensure(100'001), std::out_of_range);
  CHECK_THROWS_AS(t.nth(9592), std::out_of_range);
}

TEST_CASE("large cofactors are handled by primality testing") {
  // 2^61 - 1 is prime; its index is far beyond the sieve.
  PrimeTable t(1u << 20);
  CHECK_THROWS_AS(t.factor_pairs(2305843009213693951ull), std::out_of_range);
  // semiprime with both factors inside the cap
  const auto f = t.factor_pairs(999983ull * 999979ull);
  REQUIRE(f.size() == 2);
  CHECK(t.nth(f[0].first) == 999979);
  CHECK(t.nth(f[1].first) == 999983);
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1) == MultiIndex{});
  CHECK(factorize(6) == MultiIndex{1, 1});
  CHECK(factorize(360) == MultiIndex{3, 2, 1});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("index_of examples") {
  CHECK(index_of(MultiIndex{}) == 1);
  CHECK(index_of(MultiIndex{0, 0, 1}) == 5);
  CHECK(index_of(MultiIndex{2, 1}) == 12);
  CHECK(index_of(MultiIndex{63}) == (1ull << 63));
  CHECK_THROWS_AS(index_of(MultiIndex{64}), std::out_of_range);
  CHECK_THROWS_AS(index_of(MultiIndex{40, 30}), std::out_of_range);
}

TEST_CASE("multi-index canonical form") {
  CHECK(MultiIndex{1, 0, 0} == MultiIndex{1});
  CHECK(MultiIndex{0, 0} == MultiIndex{});
  CHECK(MultiIndex{1, 0, 0}.size() == 1);
  CHECK(MultiIndex{2, 0, 3}.degree() == 5);
  CHECK(MultiIndex{2, 0, 3}.support_count() == 2);
  CHECK(MultiIndex{2, 0, 3}[7] == 0);
  CHECK(MultiIndex::unit(2) == MultiIndex{0, 0, 1});
  CHECK(MultiIndex{1, 2} + MultiIndex{0, 0, 4} == MultiIndex{1, 2, 4});
  CHECK(MultiIndex{3, 2, 1}.to_string() == "(3,2,1)");
}

TEST_CASE("factorize matches trial division on a range") {
  const auto primes = oracle::first_primes(2300);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const MultiIndex a = factorize(n);
    const auto ref = oracle::factor(n);
    std::size_t support = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!a[j]) continue;
      REQUIRE(support < ref.size());
      REQUIRE(primes.size() > j);
      CHECK(ref[support].first == primes[j]);
      CHECK(ref[support].second == a[j]);
      ++support;
    }
    REQUIRE(support == ref.size());
  }
}

TEST_CASE("coefficient spaces and vectors") {
  const CoeffSpaceSpec l1(3, NormKind::L1), l2(3, NormKind::L2), li(3, NormKind::LInf);
  const std::vector<cplx> v{{3, 0}, {0, -4}, {1, 0}};
  CHECK(CoeffVector(l1, v).norm() == Approx(8));
  CHECK(CoeffVector(l2, v).norm() == Approx(std::sqrt(26.0)));
  CHECK(CoeffVector(li, v).norm() == Approx(4));
  CHECK(CoeffSpaceSpec(1, NormKind::L1).euclidean());
  CHECK_FALSE(li.euclidean());
  CHECK_THROWS_AS(CoeffVector(l2, std::vector<cplx>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(CoeffSpaceSpec(0, NormKind::L2), std::invalid_argument);
  CHECK(parse_norm_kind("linf") == NormKind::LInf);
  CHECK_THROWS_AS(parse_norm_kind("l3"), std::invalid_argument);
  CHECK((CoeffVector(l2, v) - CoeffVector(l2, v)).is_zero());
}

TEST_CASE("bohr lift examples") {
  const cplx a{1.5, -2}, b{0.25, 3};
  CHECK(bohr_lift(DirichletPoly{{1, a}}) == PowerPoly{{MultiIndex{}, a}});
  CHECK(bohr_lift(DirichletPoly{{2, a}, {3, b}}) == PowerPoly{{MultiIndex{1}, a}, {MultiIndex{0, 1}, b}});
  CHECK(bohr_lift(DirichletPoly{{6, a}}) == PowerPoly{{MultiIndex{1, 1}, a}});
  CHECK(bohr_transform(PowerPoly{{MultiIndex{}, a}}) == DirichletPoly{{1, a}});
  CHECK(bohr_transform(PowerPoly{{MultiIndex{1, 1}, a}}) == DirichletPoly{{6, a}});
  CHECK(lift_width(DirichletPoly{{2, a}, {7, b}}) == 4);
  CHECK(bohr_lift(DirichletPoly{{2, a}, {7, b}}).width() == 4);
}

TEST_CASE("bohr round trip on random vector-valued polynomials") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng() % 4;
    const CoeffSpaceSpec space(dim, static_cast<NormKind>(rng() % 3));
    DirichletPoly d(space);
    const std::size_t terms = 1 + rng() % 30;
    for (std::size_t k = 0; k < terms; ++k) {
      std::vector<cplx> v(dim);
      for (auto& x : v) x = {g(rng), g(rng)};
      d.set(1 + rng() % 10000, CoeffVector(space, v));
    }
    REQUIRE(bohr_transform(bohr_lift(d)) == d);
  }
}

TEST_CASE("restrict") {
  const PowerPoly p{{MultiIndex{1}, 1.0}, {MultiIndex{0, 0, 1}, 1.0}, {MultiIndex{}, 2.0}};
  CHECK(restrict(p, 2) == PowerPoly{{MultiIndex{1}, 1.0}, {MultiIndex{}, 2.0}});
  CHECK(restrict(p, 0) == PowerPoly{{MultiIndex{}, 2.0}});
  CHECK(restrict(restrict(p, 3), 5) == restrict(p, 3));
}

TEST_CASE("partial sums") {
  const DirichletPoly d{{1, 1.0}, {2, 1.0}, {3, 1.0}};
  CHECK(partial_sum(d, 2) == DirichletPoly{{1, 1.0}, {2, 1.0}});
  CHECK(partial_sum(partial_sum(d, 2), 2) == partial_sum(d, 2));
  CHECK(partial_sum(d, 10) == d);
}

TEST_CASE("sparse series drops nothing silently and rejects mismatched spaces") {
  DirichletPoly d(CoeffSpaceSpec(2, NormKind::L2));
  CHECK_THROWS_AS(d.set(3, CoeffVector::scalar(1.0)), std::invalid_argument);
  CHECK(d.at(5).is_zero());
  CHECK(d.empty());
  DirichletPoly s{{4, 2.0}};
  CHECK(s.max_index() == 4);
}

TEST_CASE("evaluator matches direct evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    PowerPoly p;
    oracle::Poly ref;
    for (int k = 0; k < 20; ++k) {
      std::vector<std::uint32_t> e(4);
      std::vector<unsigned> er(4);
      for (int j = 0; j < 4; ++j) er[j] = e[j] = static_cast<std::uint32_t>(rng() % 5);
      const cplx c{u(rng), u(rng)};
      const MultiIndex a(e);
      p.set(a, p.at(a).entries()[0] + c);
      ref[er] += c;
    }
    std::vector<cplx> z(4);
    for (auto& x : z) x = {u(rng) * 0.7, u(rng) * 0.7};
    const cplx got = evaluate(p, z).entries()[0];
    CHECK(std::abs(got - oracle::eval(ref, z)) < 1e-12);
  }
}

TEST_CASE("pairwise sum and parallel_for are deterministic") {
  std::vector<double> x(100000);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  for (auto& v : x) v = u(rng);
  const double s = pairwise_sum(x);
  CHECK(s == Approx(std::accumulate(x.begin(), x.end(), 0.0)).epsilon(1e-12));

  const DirichletPoly d = gallery("random_unimodular", 200, {0.51, 5});
  const SamplerConfig cfg{20000, 9, SampleScheme::IidUniform};
  set_max_threads(1);
  const NormEstimate one = norm_hp_mc(d, 3.0, cfg);
  set_max_threads(4);
  const NormEstimate four = norm_hp_mc(d, 3.0, cfg);
  set_max_threads(0);
  CHECK(one.value == four.value);
  CHECK(one.std_error == four.std_error);
}

TEST_CASE("parallel_for propagates exceptions") {
  set_max_threads(4);
  CHECK_THROWS_AS(parallel_for(10000, [](std::size_t lo, std::size_t) {
                    if (lo > 0) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  set_max_threads(0);
}
