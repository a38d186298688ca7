#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "furst/trig_norms.hpp"
#include "support/oracles.hpp"

using furst::LqMode;
using furst::NormEstimate;
using furst::Psi2Method;
using furst::TrigPolynomial;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

TrigPolynomial random_poly(std::mt19937_64& rng, std::size_t terms,
                           long long max_freq) {
  std::uniform_int_distribution<long long> freq(-max_freq, max_freq);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::map<long long, std::complex<double>> m;
  while (m.size() < terms)
    m[freq(rng)] = std::complex<double>(coef(rng), coef(rng));
  return TrigPolynomial(std::move(m));
}

}  // namespace

TEST_CASE("polynomial construction and coefficient access") {
  std::map<long long, std::complex<double>> m;
  m[3] = {1.0, 0.0};
  m[-2] = {0.0, 0.5};
  m[7] = {0.0, 0.0};  // dropped
  TrigPolynomial f(std::move(m));
  CHECK(f.size() == 2);
  CHECK(f.degree() == 3);

  f.set(-9, {0.25, 0.0});
  CHECK(f.degree() == 9);
  f.set(-9, {0.0, 0.0});  // erases
  CHECK(f.size() == 2);
  CHECK(f.degree() == 3);

  const auto g = TrigPolynomial::characters({7, 7, 3});
  CHECK(g.size() == 2);
  CHECK(g.terms().at(7) == std::complex<double>(2.0, 0.0));
  CHECK(g.terms().at(3) == std::complex<double>(1.0, 0.0));

  CHECK(g.l2_norm() == doctest::Approx(std::sqrt(5.0)));
  CHECK(g.coefficient_norm(1.0) == doctest::Approx(3.0));
  CHECK(g.coefficient_norm(1.5) ==
        doctest::Approx(std::pow(std::pow(2.0, 1.5) + 1.0, 1.0 / 1.5)));
  CHECK_THROWS_AS(g.coefficient_norm(0.0), std::invalid_argument);
}

TEST_CASE("grid moduli agree with direct evaluation") {
  std::map<long long, std::complex<double>> m;
  m[1] = {0.5, 0.0};
  m[-2] = {0.3, 0.4};
  m[3] = {1.0, 0.0};
  TrigPolynomial f(std::move(m));
  const std::size_t grid = 64;
  const auto moduli = f.grid_moduli(grid);
  REQUIRE(moduli.size() == grid);
  for (std::size_t g = 0; g < grid; ++g) {
    const double x = static_cast<double>(g) / grid;
    std::complex<double> v = 0.0;
    for (const auto& [k, a] : f.terms())
      v += a * std::polar(1.0, kTau * static_cast<double>(k) * x);
    CHECK(moduli[g] == doctest::Approx(std::abs(v)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(f.grid_moduli(0), std::invalid_argument);
}

TEST_CASE("huge frequencies reduce exactly instead of aliasing in doubles") {
  // 10^18 = 1 (mod 7), so e(k x) at x = g/7 equals e(3 g / 7) for
  // k = 10^18 + 2; a double product k*x would have lost the low bits.
  const std::uint64_t k = 1000000000000000002ull;
  const auto f = TrigPolynomial::characters({k, 1});
  const auto moduli = f.grid_moduli(7);
  for (std::size_t g = 0; g < 7; ++g) {
    const double expect =
        2.0 * std::abs(std::cos(M_PI * 2.0 * static_cast<double>(g) / 7.0));
    CHECK(moduli[g] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("exact L4 of two unit characters is 6^(1/4)") {
  const auto f = TrigPolynomial::characters({0, 1});
  const auto est = furst::lq_norm(f, 4.0, LqMode::exact);
  CHECK(est.kind == NormEstimate::Kind::lq_exact);
  CHECK(est.value == doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-14));
  CHECK(est.grid_size == 0);
}

TEST_CASE("exact even norms match the tuple-expansion oracle") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_poly(rng, 3 + trial % 4, 12);
    for (unsigned q : {2u, 4u, 6u, 8u}) {
      const auto est = furst::lq_norm(f, static_cast<double>(q), LqMode::exact);
      const double expect = oracle::lq_even_by_tuples(f.terms(), q);
      CHECK(est.value == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(furst::lq_norm(f, 2.0, LqMode::exact).value ==
          doctest::Approx(f.l2_norm()).epsilon(1e-12));
  }
}

TEST_CASE("grid quadrature reproduces exact even norms") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_poly(rng, 4, 10);
    for (unsigned q : {2u, 4u, 6u, 8u}) {
      const auto exact = furst::lq_norm(f, static_cast<double>(q), LqMode::exact);
      const auto grid = furst::lq_norm(f, static_cast<double>(q), LqMode::grid);
      CHECK(grid.kind == NormEstimate::Kind::lq_grid);
      CHECK(grid.grid_size > 0);
      CHECK(grid.value ==
            doctest::Approx(exact.value).epsilon(1e-10));
      CHECK(grid.refinement_delta <= 1e-10 * (1.0 + grid.value));
    }
  }
}

TEST_CASE("grid quadrature matches an independent long-double loop") {
  std::mt19937_64 rng(888);
  const auto f = random_poly(rng, 5, 8);
  for (double q : {1.0, 2.5, 3.7}) {
    const auto est = furst::lq_norm(f, q, LqMode::grid, 4096);
    const double expect = oracle::lq_by_quadrature(f.terms(), q, 8192);
    CHECK(est.value == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("norms are nondecreasing in q on the probability circle") {
  std::mt19937_64 rng(999);
  const auto f = random_poly(rng, 6, 9);
  double prev = 0.0;
  for (double q : {1.0, 2.0, 3.0, 4.0, 6.0, 8.0}) {
    const double v = furst::lq_norm(f, q, LqMode::grid).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("lq argument validation") {
  const auto f = TrigPolynomial::characters({1, 2});
  CHECK_THROWS_AS(furst::lq_norm(f, 3.0, LqMode::exact), std::invalid_argument);
  CHECK_THROWS_AS(furst::lq_norm(f, 10.0, LqMode::exact), std::invalid_argument);
  CHECK_THROWS_AS(furst::lq_norm(f, 4.5, LqMode::exact), std::invalid_argument);
  CHECK_THROWS_AS(furst::lq_norm(f, 0.5, LqMode::grid), std::invalid_argument);
  // degree 2: Nyquist floor is 4*2+1 = 9 points.
  CHECK_THROWS_AS(furst::lq_norm(f, 4.0, LqMode::grid, 8), std::invalid_argument);
  CHECK(furst::lq_norm(TrigPolynomial(), 4.0, LqMode::exact).value == 0.0);
}

TEST_CASE("subgaussian norm of a single character") {
  const auto f = TrigPolynomial::characters({5});
  // |f| = 1 everywhere: E exp(1/lambda^2) - 1 = 1 gives lambda = 1/sqrt(ln 2).
  const auto orlicz = furst::psi2_norm(f, Psi2Method::orlicz);
  CHECK(orlicz.kind == NormEstimate::Kind::psi2_orlicz);
  CHECK(orlicz.value == doctest::Approx(1.0 / std::sqrt(std::log(2.0)))
                            .epsilon(1e-6));
  // ||f||_q = 1 for all q, so the sup of 1/sqrt(q) sits at q = 2.
  const auto supq = furst::psi2_norm(f, Psi2Method::supq);
  CHECK(supq.kind == NormEstimate::Kind::psi2_supq);
  CHECK(supq.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(supq.q_list.empty());
  CHECK(supq.q_list.front() == 2.0);
}

TEST_CASE("subgaussian norms are homogeneous") {
  std::mt19937_64 rng(1234);
  const auto f = random_poly(rng, 5, 20);
  TrigPolynomial g;
  for (const auto& [k, a] : f.terms()) g.set(k, 2.5 * a);
  for (auto method : {Psi2Method::orlicz, Psi2Method::supq}) {
    const double one = furst::psi2_norm(f, method).value;
    const double scaled = furst::psi2_norm(g, method).value;
    CHECK(scaled == doctest::Approx(2.5 * one).epsilon(1e-5));
  }
}

TEST_CASE("the two subgaussian functionals stay within a uniform band") {
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint64_t> freqs;
    std::uniform_int_distribution<std::uint64_t> dist(1, 300);
    while (freqs.size() < 12) {
      const auto k = dist(rng);
      if (std::find(freqs.begin(), freqs.end(), k) == freqs.end())
        freqs.push_back(k);
    }
    const auto f = TrigPolynomial::characters(freqs);
    const double orlicz = furst::psi2_norm(f, Psi2Method::orlicz).value;
    const double supq = furst::psi2_norm(f, Psi2Method::supq).value;
    CHECK(orlicz / supq > 0.8);
    CHECK(orlicz / supq < 4.0);
  }
}

TEST_CASE("zero polynomials have no subgaussian norm") {
  CHECK_THROWS_AS(furst::psi2_norm(TrigPolynomial(), Psi2Method::orlicz),
                  std::invalid_argument);
  CHECK_THROWS_AS(furst::psi2_norm(TrigPolynomial(), Psi2Method::supq),
                  std::invalid_argument);
}

TEST_CASE("block ratio divides the block psi2 by the root of its size") {
  furst::SelectorSample s;
  s.profile_id = "planted";
  s.horizon = 16;
  s.members = {3, 4, 5, 6, 7, 9};
  const auto est = furst::psi_block_ratio(s, 2);  // block {4,5,6,7}
  const auto direct =
      furst::psi2_norm(TrigPolynomial::characters({4, 5, 6, 7}),
                       Psi2Method::supq);
  CHECK(est.kind == NormEstimate::Kind::psi2_supq);
  CHECK(est.value == doctest::Approx(direct.value / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(furst::psi_block_ratio(s, 5), std::invalid_argument);
}

TEST_CASE("block ratio of a singleton block is 1/sqrt(2)") {
  furst::SelectorSample s;
  s.horizon = 64;
  s.members = {33};
  const auto est = furst::psi_block_ratio(s, 5);
  CHECK(est.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("lambda_q of a singleton support is exactly 1") {
  const double v = furst::lambda_q_estimate({5}, 6.0, 8, 3);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lambda_q grows with the trial budget and stays above 1") {
  const std::vector<std::uint64_t> set = {2, 3, 5, 8, 13};
  const double small = furst::lambda_q_estimate(set, 6.0, 10, 17);
  const double large = furst::lambda_q_estimate(set, 6.0, 60, 17);
  CHECK(small >= 1.0 - 1e-9);
  CHECK(large >= small);  // trial t reuses mix(seed, t): supersets dominate
  CHECK(furst::lambda_q_estimate(set, 6.0, 10, 17) == small);
}

TEST_CASE("lambda_q argument validation") {
  CHECK_THROWS_AS(furst::lambda_q_estimate({3}, 1.5, 4, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(furst::lambda_q_estimate({3}, 17.0, 4, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(furst::lambda_q_estimate({3}, 4.0, 0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(furst::lambda_q_estimate({}, 4.0, 4, 0),
                  std::invalid_argument);
}

TEST_CASE("sign-flip functional of two characters is exactly 2") {
  const auto f = TrigPolynomial::characters({1, 2});
  const auto est = furst::rider_functional(f, 8, 11);
  CHECK(est.kind == NormEstimate::Kind::rider);
  // Every sign pattern of e_1 +/- e_2 attains sup 2 somewhere on the grid.
  CHECK(est.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(est.standard_error == doctest::Approx(0.0));
}

TEST_CASE("sign-flip functional is deterministic and bounded") {
  const auto f = TrigPolynomial::characters({1, 2, 3, 5, 8, 13});
  const auto a = furst::rider_functional(f, 16, 7);
  const auto b = furst::rider_functional(f, 16, 7);
  CHECK(a.value == b.value);
  CHECK(a.standard_error > 0.0);
  // sup |f| lies between the L2 norm and the absolute coefficient sum.
  CHECK(a.value >= f.l2_norm() - 1e-9);
  CHECK(a.value <= f.coefficient_norm(1.0) + 1e-9);
  CHECK_THROWS_AS(furst::rider_functional(f, 0, 7), std::invalid_argument);
  CHECK(furst::rider_functional(TrigPolynomial(), 4, 0).value == 0.0);
}

TEST_CASE("norm kind names") {
  CHECK(std::string(furst::norm_kind_name(NormEstimate::Kind::lq_exact)) ==
        "lq-exact");
  CHECK(std::string(furst::norm_kind_name(NormEstimate::Kind::psi2_supq)) ==
        "psi2-supq");
  CHECK(std::string(furst::norm_kind_name(NormEstimate::Kind::rider)) ==
        "rider");
}
