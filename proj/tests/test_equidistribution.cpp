#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "furst/equidistribution.hpp"
#include "furst/semigroup.hpp"
#include "support/oracles.hpp"

using furst::CirclePoint;

namespace {

std::vector<mpz_class> first_terms(std::size_t count) {
  furst::SemigroupBasis basis({2, 3});
  std::vector<mpz_class> freqs;
  for (const auto& t : furst::enumerate_first(basis, count))
    freqs.push_back(t.value);
  return freqs;
}

}  // namespace

TEST_CASE("rational circle points reduce phases exactly") {
  const auto x = CirclePoint::rational(mpq_class(1, 3));
  CHECK(x.reduced_phase(1) == doctest::Approx(1.0 / 3.0));
  CHECK(x.reduced_phase(2) == doctest::Approx(2.0 / 3.0));
  CHECK(x.reduced_phase(3) == doctest::Approx(0.0));
  CHECK(x.exact_phase(5) == mpq_class(2, 3));

  // A frequency far beyond double precision still reduces exactly.
  mpz_class huge("1000000000000000002");  // = 7 * q + r, r = 10^18+2 mod 7
  mpz_class r = huge % 7;
  const auto seventh = CirclePoint::rational(mpq_class(1, 7));
  CHECK(seventh.exact_phase(huge) == mpq_class(r, 7));
  CHECK(seventh.reduced_phase(huge) ==
        doctest::Approx(r.get_d() / 7.0).epsilon(1e-15));
}

TEST_CASE("negative multiples and normalization") {
  const auto x = CirclePoint::rational(mpq_class(5, 3));  // reduces to 2/3
  CHECK(x.rational_value() == mpq_class(2, 3));
  CHECK(x.reduced_phase(-1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("weyl averages at rational points match the closed form") {
  const auto x = CirclePoint::rational(mpq_class(1, 3));
  const std::vector<mpz_class> freqs = {1, 2, 3};
  const auto avg = furst::weyl_sum(freqs, x, 1);
  CHECK(avg.count == 3);
  CHECK(std::abs(avg.value) < 1e-14);  // e(1/3)+e(2/3)+e(0) = 0

  const auto at_zero = furst::weyl_sum(freqs, CirclePoint::zero(), 1);
  CHECK(at_zero.value.real() == doctest::Approx(1.0));
  CHECK(at_zero.value.imag() == doctest::Approx(0.0));
}

TEST_CASE("the multiplier folds into the frequencies") {
  const auto x = CirclePoint::rational(mpq_class(3, 7));
  const std::vector<mpz_class> freqs = {2, 5, 11};
  std::vector<mpz_class> scaled;
  for (const auto& f : freqs) scaled.push_back(f * 4);
  const auto a = furst::weyl_sum(freqs, x, 4);
  const auto b = furst::weyl_sum(scaled, x, 1);
  CHECK(a.value.real() == doctest::Approx(b.value.real()).epsilon(1e-14));
  CHECK(a.value.imag() == doctest::Approx(b.value.imag()).epsilon(1e-14));
  CHECK(a.multiplier == 4);
}

TEST_CASE("weyl magnitude decays along the semigroup orbit") {
  const auto x = CirclePoint::from_real(
      furst::CertifiedReal::log_ratio(2, 3, 256));
  const auto small = furst::weyl_sum(first_terms(50), x, 1);
  const auto large = furst::weyl_sum(first_terms(800), x, 1);
  CHECK(std::abs(large.value) < std::abs(small.value));
  CHECK(std::abs(large.value) < 0.05);
}

TEST_CASE("orbit points match direct evaluation on small frequencies") {
  const double alpha = std::log(2.0) / std::log(3.0);
  const auto x = CirclePoint::from_real(
      furst::CertifiedReal::log_ratio(2, 3, 256));
  const auto freqs = first_terms(40);
  const auto pts = furst::orbit_points(freqs, x);
  REQUIRE(pts.size() == freqs.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double direct = freqs[i].get_d() * alpha;
    const double frac = direct - std::floor(direct);
    CHECK(pts[i] == doctest::Approx(frac).epsilon(1e-9));
    CHECK(pts[i] >= 0.0);
    CHECK(pts[i] < 1.0);
  }
}

TEST_CASE("star discrepancy of canonical configurations") {
  // Equally spaced points 0, 1/N, ..., (N-1)/N have D* = 1/N.
  for (std::size_t n : {4u, 10u, 100u}) {
    std::vector<double> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(static_cast<double>(i) / static_cast<double>(n));
    std::reverse(pts.begin(), pts.end());  // input order must not matter
    CHECK(furst::star_discrepancy(pts) ==
          doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-12));
  }
  CHECK(furst::star_discrepancy({0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(furst::star_discrepancy({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(furst::star_discrepancy({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(furst::star_discrepancy({}), std::invalid_argument);
}

TEST_CASE("semigroup orbit discrepancy shrinks with more terms") {
  const auto x = CirclePoint::from_real(
      furst::CertifiedReal::log_ratio(2, 3, 256));
  const double d_small =
      furst::star_discrepancy(furst::orbit_points(first_terms(100), x));
  const double d_large =
      furst::star_discrepancy(furst::orbit_points(first_terms(1500), x));
  CHECK(d_large < d_small);
  CHECK(d_large < 0.03);
}

TEST_CASE("hartman profile audits low-denominator rationals exactly") {
  const auto freqs = first_terms(300);
  const auto report = furst::hartman_profile(freqs, 8, 4096);
  CHECK(report.grid_size == 4096);
  CHECK(report.grid_points_used <= report.grid_size);
  CHECK(report.grid_points_used > 0);

  // x = 0/1 must be audited with magnitude exactly 1.
  bool saw_zero = false;
  for (const auto& ex : report.excluded) {
    CHECK(ex.point.get_den() <= 8);
    if (ex.point == 0) {
      saw_zero = true;
      CHECK(ex.magnitude == doctest::Approx(1.0));
    }
  }
  CHECK(saw_zero);

  // x = 1/2: the average is (N - 2*#odd terms)/N; odd terms are the pure
  // powers of three.
  std::size_t odd = 0;
  for (const auto& f : freqs)
    if (mpz_odd_p(f.get_mpz_t())) ++odd;
  const double expect_half =
      std::abs(1.0 - 2.0 * static_cast<double>(odd) / 300.0);
  bool saw_half = false;
  for (const auto& ex : report.excluded)
    if (ex.point == mpq_class(1, 2)) {
      saw_half = true;
      CHECK(ex.magnitude == doctest::Approx(expect_half).epsilon(1e-12));
    }
  CHECK(saw_half);

  // The grid avoided those spikes: the Hartman sup stays well below 1.
  CHECK(report.grid_sup < 0.8);
}

TEST_CASE("del series integrals are exactly 1/n for distinct frequencies") {
  const auto terms = furst::del_series(first_terms(50), 50);
  REQUIRE(terms.size() == 50);
  mpq_class partial = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::size_t n = i + 1;
    CHECK(terms[i].n == n);
    CHECK(terms[i].integral_exact == mpq_class(1, static_cast<long>(n)));
    CHECK(std::abs(terms[i].integral_quadrature -
                   terms[i].integral_exact.get_d()) < 1e-10);
    partial += mpq_class(1, static_cast<long>(n * n));
    CHECK(terms[i].partial_sum_exact == partial);
    CHECK(std::abs(terms[i].partial_sum_quadrature - partial.get_d()) < 1e-8);
  }
}

TEST_CASE("del series counts coincidences when frequencies repeat") {
  // freqs = (7, 7): |A_2|^2 integrates to 4/4 = 1.
  const std::vector<mpz_class> freqs = {7, 7};
  const auto terms = furst::del_series(freqs, 2);
  REQUIRE(terms.size() == 2);
  CHECK(terms[1].integral_exact == 1);
}

TEST_CASE("log-log lambda spec") {
  const auto lam = furst::LambdaSpec::log_log();
  CHECK(lam(1) == 1);
  CHECK(lam(10) == 4);    // floor(log(10 log 10)/log 2)
  CHECK(lam(100) == 8);
  CHECK(lam(1000) == 12);
  // Non-decreasing over a long range.
  unsigned prev = 1;
  for (std::size_t n = 1; n <= 5000; ++n) {
    CHECK(lam(n) >= prev);
    prev = lam(n);
  }
}

TEST_CASE("lambda table and constant specs") {
  const auto c = furst::LambdaSpec::constant(3);
  CHECK(c(1) == 3);
  CHECK(c(999) == 3);
  const auto t = furst::LambdaSpec::table({1, 2, 2, 3});
  CHECK(t(1) == 1);
  CHECK(t(4) == 3);
  CHECK(t.table_limit() == 4);
}

TEST_CASE("shrinking-target paths are deterministic and hit-consistent") {
  const auto lam = furst::LambdaSpec::log_log();
  const auto a = furst::shrinking_target_sim(lam, 500, 123);
  const auto b = furst::shrinking_target_sim(lam, 500, 123);
  CHECK(a.hits == b.hits);
  REQUIRE(a.window_averages.size() == 500);

  // Every hit forces its window average to at least 1/2 (the k = N term).
  for (std::size_t n : a.hits) {
    REQUIRE(n >= 1);
    CHECK(a.window_averages[n - 1] >= 0.5);
  }

  const auto c = furst::shrinking_target_sim(lam, 500, 124);
  CHECK(a.hits != c.hits);  // different seed, different path
}

TEST_CASE("forced all-zero path hits everywhere with maximal windows") {
  const auto lam = furst::LambdaSpec::log_log();
  const auto path = furst::shrinking_target_sim(lam, 64, 0, true);
  CHECK(path.forced_zero);
  REQUIRE(path.hits.size() == 64);
  for (std::size_t n = 1; n <= 64; ++n) {
    CHECK(path.hits[n - 1] == n);
    // All indicators fire: window = (1/2N) sum_{k<2N} k = (2N-1)/2.
    CHECK(path.window_averages[n - 1] ==
          doctest::Approx((2.0 * n - 1.0) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("ensemble frequencies expose the exact target probabilities") {
  const auto lam = furst::LambdaSpec::log_log();
  const auto rows = furst::ensemble_hit_frequency(lam, {10, 100}, 2000, 7);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 10);
  CHECK(rows[0].exact == doctest::Approx(std::pow(2.0, -4.0)));
  CHECK(rows[1].exact == doctest::Approx(std::pow(2.0, -8.0)));
  for (const auto& row : rows) {
    CHECK(row.sigma > 0.0);
    CHECK(std::abs(row.empirical - row.exact) <= 5.0 * row.sigma);
  }
}

TEST_CASE("ensemble runs are reproducible") {
  const auto lam = furst::LambdaSpec::log_log();
  const auto a = furst::ensemble_hit_frequency(lam, {10, 50}, 500, 99);
  const auto b = furst::ensemble_hit_frequency(lam, {10, 50}, 500, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].empirical == b[i].empirical);
}
