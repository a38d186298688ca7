#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "furst/semigroup.hpp"
#include "support/oracles.hpp"

using furst::SemigroupBasis;

TEST_CASE("enumeration matches the exponent-grid oracle") {
  for (const auto& gens : {std::vector<unsigned long>{2, 3},
                           std::vector<unsigned long>{2, 5},
                           std::vector<unsigned long>{2, 3, 5},
                           std::vector<unsigned long>{3, 7, 10}}) {
    SemigroupBasis basis(gens);
    for (long limit : {1L, 2L, 100L, 12345L, 100000L}) {
      const auto expect = oracle::smooth_upto(gens, limit);
      const auto got = furst::enumerate_upto(basis, limit);
      REQUIRE(got.size() == expect.size());
      for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i].value == expect[i]);
    }
  }
}

TEST_CASE("enumerated values factor exactly over the basis") {
  SemigroupBasis basis({2, 3, 5});
  for (const auto& t : furst::enumerate_upto(basis, 50000)) {
    mpz_class v = 1;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (unsigned e = 0; e < t.exponents[i]; ++e) v *= basis.generators()[i];
    CHECK(v == t.value);
  }
}

TEST_CASE("unit inclusion prepends exactly the empty product") {
  SemigroupBasis basis({2, 3});
  const auto with = furst::enumerate_upto(basis, 1000, true);
  const auto without = furst::enumerate_upto(basis, 1000, false);
  REQUIRE(with.size() == without.size() + 1);
  CHECK(with.front().value == 1);
  for (std::size_t i = 0; i < without.size(); ++i)
    CHECK(with[i + 1].value == without[i].value);
}

TEST_CASE("enumerate_first is a prefix of enumerate_upto") {
  SemigroupBasis basis({2, 3});
  const auto all = furst::enumerate_upto(basis, 1 << 20);
  const auto first = furst::enumerate_first(basis, 60);
  REQUIRE(first.size() == 60);
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(first[i].value == all[i].value);
}

TEST_CASE("count_upto equals the oracle count without materializing") {
  for (const auto& gens :
       {std::vector<unsigned long>{2, 3}, std::vector<unsigned long>{2, 3, 5}}) {
    SemigroupBasis basis(gens);
    for (long limit : {1L, 999L, 65536L, 1000000L}) {
      CHECK(furst::count_upto(basis, limit) ==
            oracle::smooth_upto(gens, limit).size());
      CHECK(furst::count_upto(basis, limit, true) ==
            oracle::smooth_upto(gens, limit, true).size());
    }
  }
}

TEST_CASE("count_upto handles boundary values that are semigroup elements") {
  SemigroupBasis basis({2, 3});
  // 2^10 3^5 is an element; limits on and next to it must differ by one.
  mpz_class v = 1024 * 243;
  CHECK(furst::count_upto(basis, v) == furst::count_upto(basis, v - 1) + 1);
  CHECK(furst::count_upto(basis, v) == furst::count_upto(basis, v + 1));
}

TEST_CASE("nth_term inverts the enumeration") {
  SemigroupBasis basis({2, 3});
  const auto all = furst::enumerate_first(basis, 200);
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{44},
                        std::size_t{100}, std::size_t{200}}) {
    const auto t = furst::nth_term(basis, n);
    CHECK(t.value == all[n - 1].value);
    CHECK(t.exponents == all[n - 1].exponents);
  }
}

TEST_CASE("ramanujan estimate tracks the true count within 5") {
  SemigroupBasis basis({2, 3});
  for (double n : {1e3, 1e4, 1e5, 1e6, 1e7}) {
    const auto count = furst::count_upto(basis, mpz_class(n), true);
    const double est = furst::ramanujan_estimate(n);
    CHECK(std::abs(est - static_cast<double>(count)) <= 5.0);
  }
}

TEST_CASE("gap statistics agree with direct differences") {
  SemigroupBasis basis({2, 3});
  const auto terms = furst::enumerate_first(basis, 101);
  const auto gaps = furst::gap_stats(basis, 100, 4.116, 0.0977);
  REQUIRE(gaps.size() == 100);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    CHECK(gaps[i].index == i + 1);
    CHECK(gaps[i].gap == terms[i + 1].value - terms[i].value);
    const double rel = mpz_get_d(gaps[i].gap.get_mpz_t()) /
                       terms[i].value.get_d();
    CHECK(gaps[i].relative_gap == doctest::Approx(rel).epsilon(1e-12));
    CHECK(gaps[i].lower_norm > 0.0);
    CHECK(gaps[i].upper_norm > 0.0);
  }
}

TEST_CASE("consecutive gaps grow: minimum gap over late windows increases") {
  // s_{n+1} - s_n -> infinity; proxy: the min gap in [1200,1300) exceeds the
  // max gap in [1,44).
  SemigroupBasis basis({2, 3});
  const auto terms = furst::enumerate_first(basis, 1301);
  mpz_class early_max = 0, late_min = 0;
  for (std::size_t i = 0; i + 1 < 44; ++i)
    early_max = std::max(early_max, mpz_class(terms[i + 1].value - terms[i].value));
  late_min = terms[1200].value - terms[1199].value;
  for (std::size_t i = 1199; i + 1 < 1300; ++i)
    late_min = std::min(late_min, mpz_class(terms[i + 1].value - terms[i].value));
  CHECK(late_min > early_max);
}

TEST_CASE("log_value is exact enough for sorting") {
  SemigroupBasis basis({2, 3});
  const auto terms = furst::enumerate_first(basis, 500);
  for (const auto& t : terms) {
    const double direct = std::log(t.value.get_d());
    CHECK(t.log_value(basis) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("invalid bases are rejected") {
  CHECK_THROWS_AS(SemigroupBasis({2, 4}), std::invalid_argument);   // gcd 2
  CHECK_THROWS_AS(SemigroupBasis({6, 10}), std::invalid_argument);  // gcd 2
  CHECK_THROWS_AS(SemigroupBasis({1, 3}), std::invalid_argument);   // < 2
  CHECK_THROWS_AS(SemigroupBasis({}), std::invalid_argument);       // empty
  CHECK_THROWS_AS(SemigroupBasis({2, 2}), std::invalid_argument);   // repeat
}

TEST_CASE("generators are sorted on construction") {
  SemigroupBasis basis({7, 2, 5});
  CHECK(basis.generators() == std::vector<unsigned long>({2, 5, 7}));
}
