#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace furst {

// Multiplicative semigroup generated by pairwise coprime integers >= 2.
// Generators are kept sorted; the unit (empty product) is excluded from
// enumerations unless explicitly requested.
class SemigroupBasis {
 public:
  // Sorts the generators and validates them: each >= 2, pairwise coprime.
  // Throws std::invalid_argument otherwise.
  explicit SemigroupBasis(std::vector<unsigned long> generators);

  const std::vector<unsigned long>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  double log_generator(std::size_t i) const { return logs_[i]; }

  // True when every generator is prime (required by the Bohr-certificate
  // construction).
  bool all_prime() const;

 private:
  std::vector<unsigned long> gens_;
  std::vector<double> logs_;
};

struct SmoothNumber {
  std::vector<unsigned> exponents;  // aligned with basis.generators()
  mpz_class value;

  // log(value) from the exponent vector; exact to ~1e-14 relative error.
  double log_value(const SemigroupBasis& basis) const;
};

// All semigroup elements <= limit in strictly increasing order.
std::vector<SmoothNumber> enumerate_upto(const SemigroupBasis& basis,
                                         const mpz_class& limit,
                                         bool include_unit = false);

// First `count` elements in increasing order (unit excluded unless asked).
std::vector<SmoothNumber> enumerate_first(const SemigroupBasis& basis,
                                          std::size_t count,
                                          bool include_unit = false);

// |S ∩ [1, limit]| without materializing the list: lattice count with
// certified floor computations, exact integer fallback on boundary rows.
unsigned long long count_upto(const SemigroupBasis& basis,
                              const mpz_class& limit,
                              bool include_unit = false);

// n-th element (1-based, unit excluded): nth_term(basis, 1) is the
// smallest generator.
SmoothNumber nth_term(const SemigroupBasis& basis, std::size_t n);

// Smooth count approximation for the (2,3) semigroup including the unit:
// log(2N)·log(3N) / (2·log2·log3) + 1/2.
double ramanujan_estimate(double n);

struct GapReport {
  std::size_t index;    // n, 1-based
  mpz_class gap;        // s_{n+1} - s_n
  double relative_gap;  // gap / s_n
  double lower_norm;    // relative_gap * (log s_n)^rho
  double upper_norm;    // relative_gap * n^r
};

// Consecutive-gap statistics for the first n_max terms.
std::vector<GapReport> gap_stats(const SemigroupBasis& basis, std::size_t n_max,
                                 double rho, double r);

}  // namespace furst
