#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "furst/diophantine.hpp"
#include "furst/semigroup.hpp"
#include "support/oracles.hpp"

using furst::CertifiedReal;

TEST_CASE("log ratio bracket contains the true value") {
  const auto x = CertifiedReal::log_ratio(2, 3, 256);
  CHECK(x.value() == doctest::Approx(std::log(2.0) / std::log(3.0))
                         .epsilon(1e-15));
  CHECK(x.error_radius() < 1e-70);
  CHECK_FALSE(x.is_exact_rational());
}

TEST_CASE("multiplicative dependence is detected as an exact rational") {
  const auto two = CertifiedReal::log_ratio(4, 2, 128);
  REQUIRE(two.is_exact_rational());
  CHECK(two.rational() == mpq_class(2));

  const auto three_halves = CertifiedReal::log_ratio(8, 4, 128);
  REQUIRE(three_halves.is_exact_rational());
  CHECK(three_halves.rational() == mpq_class(3, 2));

  const auto one = CertifiedReal::log_ratio(12, 12, 128);
  REQUIRE(one.is_exact_rational());
  CHECK(one.rational() == mpq_class(1));

  CHECK_FALSE(CertifiedReal::log_ratio(6, 12, 128).is_exact_rational());
}

TEST_CASE("rational embedding and certified floor") {
  const auto x = CertifiedReal::from_rational(mpq_class(22, 7), 128);
  REQUIRE(x.is_exact_rational());
  auto floor = x.certified_floor();
  REQUIRE(floor.has_value());
  CHECK(*floor == 3);
  CHECK(x.value() == doctest::Approx(22.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("sqrt fractional part") {
  const auto x = CertifiedReal::sqrt_fraction(2, 128);
  CHECK(x.value() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
  // Perfect squares have zero fractional part, delivered as an exact rational.
  const auto square = CertifiedReal::sqrt_fraction(9, 128);
  REQUIRE(square.is_exact_rational());
  CHECK(square.rational() == 0);
}

TEST_CASE("circle distance bounds") {
  const auto third = CertifiedReal::from_rational(mpq_class(1, 3), 128);
  auto b3 = third.circle_distance(3);  // ||3 * 1/3|| = 0
  CHECK(b3.lo == doctest::Approx(0.0));
  CHECK(b3.hi <= 1e-30);
  auto b1 = third.circle_distance(1);  // ||1/3|| = 1/3
  CHECK(b1.lo == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("continued fraction of an exact rational terminates") {
  const auto x = CertifiedReal::from_rational(mpq_class(355, 113), 256);
  const auto cf = furst::continued_fraction(x, 10);
  CHECK(cf.terminated_rational);
  CHECK_FALSE(cf.truncated_by_precision);
  REQUIRE(cf.quotients.size() == 3);
  CHECK(cf.quotients[0] == 3);
  CHECK(cf.quotients[1] == 7);
  CHECK(cf.quotients[2] == 16);
  CHECK(cf.convergents.back().first == 355);
  CHECK(cf.convergents.back().second == 113);
}

TEST_CASE("continued fraction of log2/log3 begins [0;1,1,1,2,2]") {
  const auto cf =
      furst::continued_fraction(CertifiedReal::log_ratio(2, 3, 256), 5);
  REQUIRE(cf.quotients.size() >= 6);
  const long expect[] = {0, 1, 1, 1, 2, 2};
  for (int i = 0; i < 6; ++i) CHECK(cf.quotients[i] == expect[i]);
  // Convergents 0/1, 1/1, 1/2, 2/3, 5/8, 12/19.
  const long p[] = {0, 1, 1, 2, 5, 12};
  const long q[] = {1, 1, 2, 3, 8, 19};
  REQUIRE(cf.convergents.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(cf.convergents[i].first == p[i]);
    CHECK(cf.convergents[i].second == q[i]);
  }
}

TEST_CASE("convergents satisfy the recurrence and the approximation law") {
  const auto x = CertifiedReal::log_ratio(2, 3, 512);
  const auto cf = furst::continued_fraction(x, 20);
  REQUIRE(cf.quotients.size() >= 15);
  for (std::size_t k = 2; k < cf.convergents.size(); ++k) {
    CHECK(cf.convergents[k].first ==
          cf.quotients[k] * cf.convergents[k - 1].first +
              cf.convergents[k - 2].first);
    CHECK(cf.convergents[k].second ==
          cf.quotients[k] * cf.convergents[k - 1].second +
              cf.convergents[k - 2].second);
  }
  const double alpha = x.value();
  for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
    const double p = cf.convergents[k].first.get_d();
    const double q = cf.convergents[k].second.get_d();
    CHECK(std::abs(alpha - p / q) < 1.0 / (q * q));
  }
}

TEST_CASE("precision doubling yields deep expansions without truncation") {
  const auto cf = furst::log_ratio_continued_fraction(2, 3, 40);
  CHECK_FALSE(cf.truncated_by_precision);
  CHECK(cf.quotients.size() == 41);
}

TEST_CASE("pure pairs to 2200 are the six known ones") {
  const auto pairs = furst::pure_pairs(2200);
  REQUIRE(pairs.size() == 6);
  const long first[] = {2, 3, 8, 27, 243, 2048};
  const long second[] = {3, 4, 9, 32, 256, 2187};
  for (int i = 0; i < 6; ++i) {
    CHECK(pairs[i].first == first[i]);
    CHECK(pairs[i].second == second[i]);
  }
  // (8,9) = (2^3, 3^2): p/q = 2/3 reads off a convergent.
  CHECK(pairs[2].three_exponent == 2);
  CHECK(pairs[2].two_exponent == 3);
  // Every pair is really consecutive in S.
  const auto terms = oracle::smooth_upto({2, 3}, 2200);
  for (const auto& pr : pairs) {
    auto it = std::find(terms.begin(), terms.end(), pr.first);
    REQUIRE(it != terms.end());
    ++it;
    REQUIRE(it != terms.end());
    CHECK(*it == pr.second);
  }
}

TEST_CASE("sturmian coding word starts as the known 14 symbols") {
  const auto word = furst::sturmian_code(14);
  const int expect[] = {1, 2, 1, 2, 1, 2, 2, 1, 2, 1, 2, 2, 1, 2};
  REQUIRE(word.size() == 14);
  for (int i = 0; i < 14; ++i) CHECK(word[i] == expect[i]);
}

TEST_CASE("sturmian code counts powers of two between powers of three") {
  const auto word = furst::sturmian_code(30);
  mpz_class lo = 1, hi = 3;
  for (std::size_t n = 0; n < word.size(); ++n) {
    int count = 0;
    mpz_class p = 1;
    while (p <= hi) {
      if (p > lo) ++count;
      p *= 2;
    }
    if (p / 2 == hi) --count;  // strict upper end
    CHECK(word[n] == count);
    lo = hi;
    hi *= 3;
  }
}

TEST_CASE("merged power word equals its rotation description") {
  const auto arithmetic = furst::merged_power_word(3000);
  const auto rotation = furst::merged_rotation_word(3000);
  REQUIRE(arithmetic.size() == rotation.size());
  for (std::size_t i = 0; i < arithmetic.size(); ++i)
    CHECK(arithmetic[i] == rotation[i]);
}

TEST_CASE("merged power word matches a direct merge") {
  // Merge {2^j : j>=1} and {3^k : k>=1}; entry is 1 for a power of two.
  std::vector<std::pair<mpz_class, int>> merged;
  mpz_class p2 = 2, p3 = 3;
  for (int i = 0; i < 40; ++i) {
    if (p2 < p3) {
      merged.push_back({p2, 1});
      p2 *= 2;
    } else {
      merged.push_back({p3, 0});
      p3 *= 3;
    }
  }
  const auto word = furst::merged_power_word(40);
  REQUIRE(word.size() == 40);
  for (int i = 0; i < 40; ++i) CHECK(word[i] == merged[i].second);
}

TEST_CASE("irrationality profile matches a direct scan") {
  const auto x = CertifiedReal::log_ratio(2, 3, 256);
  const double rho = 4.116;
  const auto prof = furst::irrationality_profile(x, 19, rho);
  CHECK(prof.certified);
  const double alpha = x.value();
  double best = 1e300;
  unsigned long best_q = 0;
  for (unsigned long q = 1; q <= 19; ++q) {
    const double prod = alpha * q;
    const double dist = std::abs(prod - std::round(prod));
    const double v = dist * std::pow(static_cast<double>(q), rho);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }
  CHECK(prof.min_value == doctest::Approx(best).epsilon(1e-9));
  CHECK(prof.argmin_q == best_q);
}

TEST_CASE("irrationality profile needs q_max >= 1") {
  const auto x = CertifiedReal::log_ratio(2, 3, 128);
  CHECK_THROWS_AS(furst::irrationality_profile(x, 0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("bohr certificates exist and verify for small non-members") {
  furst::SemigroupBasis basis({2, 3});
  for (long m = 0; m <= 100; ++m) {
    if (furst::semigroup_contains(basis, m)) continue;  // 1 is the empty product
    const auto cert = furst::bohr_certificate(m, basis);
    CHECK(cert.target == m);
    CHECK(cert.modulus > 1);
    // The target's residue really differs from every element's residue:
    // delegated scan up to 10^5 here, the acceptance run goes to 10^7.
    CHECK(furst::verify_certificate(cert, basis, 100000));
  }
}

TEST_CASE("bohr certificate construction details for m = 5 and m = 0") {
  furst::SemigroupBasis basis({2, 3});
  const auto five = furst::bohr_certificate(5, basis);
  CHECK(five.residual == 5);
  CHECK(five.semigroup_factor == 6);
  CHECK(five.modulus == 6);
  CHECK(five.semigroup_exponents == std::vector<unsigned long>({0, 0}));

  const auto zero = furst::bohr_certificate(0, basis);
  CHECK(zero.modulus > 1);
  CHECK(furst::verify_certificate(zero, basis, 100000));
}

TEST_CASE("bohr certificate rejects semigroup members and bad bases") {
  furst::SemigroupBasis basis({2, 3});
  CHECK_THROWS_AS(furst::bohr_certificate(12, basis), std::invalid_argument);
  CHECK_THROWS_AS(furst::bohr_certificate(-1, basis), std::invalid_argument);
  furst::SemigroupBasis composite({4, 9});
  CHECK_FALSE(composite.all_prime());
  CHECK_THROWS_AS(furst::bohr_certificate(5, composite), std::invalid_argument);
}

TEST_CASE("membership test agrees with the enumeration") {
  furst::SemigroupBasis basis({2, 3});
  std::set<long> members;
  for (const auto& v : oracle::smooth_upto({2, 3}, 5000, true))
    members.insert(static_cast<long>(v.get_si()));
  for (long m = 0; m <= 5000; ++m)
    CHECK(furst::semigroup_contains(basis, m) == (members.count(m) > 0));
}
