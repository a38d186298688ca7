#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "furst/semigroup.hpp"

namespace furst {

// A real number known to lie in [lo, hi] at a fixed MPFR precision, with an
// optional exact rational identity (set when the value is provably rational,
// e.g. log 4/log 2 = 2).  All derived quantities carry certified error bars.
class CertifiedReal {
 public:
  CertifiedReal(const CertifiedReal& other);
  CertifiedReal(CertifiedReal&& other) noexcept;
  CertifiedReal& operator=(const CertifiedReal& other);
  CertifiedReal& operator=(CertifiedReal&& other) noexcept;
  ~CertifiedReal();

  // log(a)/log(b) bracketed at `bits` precision.  Detects multiplicative
  // dependence (a^n = b^m) and records the exact rational m/n in that case.
  static CertifiedReal log_ratio(unsigned long a, unsigned long b,
                                 mpfr_prec_t bits);

  // Exact rational embedded as a (tight) interval.
  static CertifiedReal from_rational(const mpq_class& value, mpfr_prec_t bits);

  // frac(sqrt(n)) for non-square n, bracketed at `bits` precision.
  static CertifiedReal sqrt_fraction(unsigned long n, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return prec_; }
  double value() const;         // interval midpoint
  double error_radius() const;  // half the interval width
  bool is_exact_rational() const { return exact_.has_value(); }
  const mpq_class& rational() const { return *exact_; }

  // Floor of the value if both interval ends agree on it.
  std::optional<mpz_class> certified_floor() const;

  // Bounds for the circle distance ||q * x|| (distance to nearest integer).
  struct Bounds {
    double lo, hi;
  };
  Bounds circle_distance(unsigned long q) const;

  // Raw access for modules that continue computing on the bracket.
  const __mpfr_struct* lower() const { return lo_; }
  const __mpfr_struct* upper() const { return hi_; }

 private:
  CertifiedReal(mpfr_prec_t prec);
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
  std::optional<mpq_class> exact_;
};

struct ContinuedFraction {
  std::vector<mpz_class> quotients;  // a0, a1, ..., at most depth+1 entries
  // Convergents p_k/q_k from k = 0 (p_0/q_0 = a0/1).
  std::vector<std::pair<mpz_class, mpz_class>> convergents;
  bool truncated_by_precision = false;  // stopped: floor not certifiable
  bool terminated_rational = false;     // exact rational fully expanded
};

// Up to `depth` partial quotients after a0, at the precision carried by x.
ContinuedFraction continued_fraction(const CertifiedReal& x, std::size_t depth);

// Continued fraction of log(a)/log(b), doubling the working precision until
// `depth` quotients are certified (or the precision cap is reached, in which
// case the longest certified prefix is returned with the truncation flag).
ContinuedFraction log_ratio_continued_fraction(unsigned long a, unsigned long b,
                                               std::size_t depth);

// Consecutive pure-power pairs in the (2,3) semigroup: adjacent terms
// (3^p, 2^q) or (2^q, 3^p).  The fraction p/q approximates log2/log3.
struct PurePair {
  mpz_class first, second;  // consecutive semigroup elements, first < second
  unsigned long three_exponent;  // p
  unsigned long two_exponent;    // q
};
std::vector<PurePair> pure_pairs(const mpz_class& limit);

// Coding word u over {1,2}: u_n = number of powers of 2 strictly between
// 3^(n-1) and 3^n.  Computed with certified comparisons of j*log2 vs k*log3.
std::vector<int> sturmian_code(std::size_t n_max);

// Type word of the merged sequence of powers of 2 and 3 (exponents >= 1,
// sorted increasingly): entry n is 1 when the n-th element is a power of 2,
// else 0.  Computed arithmetically.
std::vector<int> merged_power_word(std::size_t n_max);

// The same word produced by the circle rotation: entry n is 1 iff
// frac(n*b) > 1 - b where b = 1/(1 + log2/log3).  Certified at 256 bits.
std::vector<int> merged_rotation_word(std::size_t n_max);

struct IrrationalityProfile {
  double min_value;        // min over q <= q_max of ||q x|| * q^rho
  unsigned long argmin_q;  // first q attaining the minimum
  bool certified;          // false when interval widths blur the comparison
};
IrrationalityProfile irrationality_profile(const CertifiedReal& x,
                                           unsigned long q_max, double rho);

// Witness that an arithmetic progression around m avoids the semigroup:
// no element of S is congruent to m modulo `modulus`.  Exists for every
// m >= 0 outside S when the generators are prime.
struct BohrCertificate {
  mpz_class target;                           // m
  std::vector<unsigned long> semigroup_exponents;  // generator multiplicities in m
  mpz_class residual;          // m with all generator factors removed (0 if m=0)
  mpz_class semigroup_factor;  // s = prod q_j^{beta_j}, beta_j >= 1 (1 if m=0)
  mpz_class modulus;           // s * (semigroup part of m), or a prime for m=0
};

BohrCertificate bohr_certificate(const mpz_class& m, const SemigroupBasis& basis);

// Scans S up to `limit` and checks no element is congruent to the target.
bool verify_certificate(const BohrCertificate& cert, const SemigroupBasis& basis,
                        const mpz_class& limit);

// Membership including the unit (1 is the empty product).
bool semigroup_contains(const SemigroupBasis& basis, const mpz_class& m);

}  // namespace furst
