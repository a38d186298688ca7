#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "furst/diophantine.hpp"

namespace furst {

// A point on the circle R/Z, held either as an exact rational or as a
// high-precision real.  Phase products m*x are reduced mod 1 in exact or
// extended-precision arithmetic before any trig call, so multipliers of
// size 10^7+ lose nothing.
class CirclePoint {
 public:
  static CirclePoint rational(const mpq_class& v);  // reduced into [0,1)
  static CirclePoint from_real(const CertifiedReal& x);
  static CirclePoint zero();

  bool is_rational() const { return rat_.has_value(); }
  const mpq_class& rational_value() const { return *rat_; }

  // frac(m * x) as a double in [0,1).
  double reduced_phase(const mpz_class& m) const;
  // Exact fractional part of m * x; rational points only.
  mpq_class exact_phase(const mpz_class& m) const;

 private:
  CirclePoint() = default;
  std::optional<mpq_class> rat_;
  std::optional<CertifiedReal> real_;
};

struct WeylAverage {
  std::size_t count;          // N
  long long multiplier;       // h
  std::complex<double> value; // (1/N) sum e(h * freq_n * x)
};

// Compensated average of e(h * freq * x) over the frequency list.
WeylAverage weyl_sum(const std::vector<mpz_class>& freqs, const CirclePoint& x,
                     long long h);

// frac(freq_n * x) for each n, in input order.
std::vector<double> orbit_points(const std::vector<mpz_class>& freqs,
                                 const CirclePoint& x);

// Exact star discrepancy via the sorted-sample formula
// D*_N = max_i max(i/N - u_(i), u_(i) - (i-1)/N).  Throws on points
// outside [0,1).
double star_discrepancy(std::vector<double> points);

struct HartmanReport {
  double grid_sup = 0.0;   // max |average| over the offset grid
  std::size_t grid_size = 0;
  std::size_t grid_points_used = 0;
  struct RationalValue {
    mpq_class point;
    double magnitude;
  };
  // Exact |average| at every reduced rational a/q with q <= denominator_bound
  // (x = 0 appears here as 0/1), plus any grid point that accidentally
  // reduces to a low denominator.
  std::vector<RationalValue> excluded;
};

// Sup of |(1/N) sum e(freq_n x)| over a Halton-offset grid that provably
// avoids denominators <= denominator_bound, with the low-denominator
// rationals audited exactly on the side.
HartmanReport hartman_profile(const std::vector<mpz_class>& freqs,
                              unsigned long denominator_bound,
                              std::size_t grid_size);

struct DelSeriesTerm {
  std::size_t n;
  mpq_class integral_exact;        // ∫ |A_n|^2 dm by Parseval / Gram count
  double integral_quadrature;      // same integral by uniform quadrature
  mpq_class partial_sum_exact;     // sum_{k<=n} (1/k) ∫ |A_k|^2
  double partial_sum_quadrature;
};

// Partial sums of the Davenport–Erdős–LeVeque series for the averages
// A_n(x) = (1/n) sum_{k<=n} e(freq_k x).
std::vector<DelSeriesTerm> del_series(const std::vector<mpz_class>& freqs,
                                      std::size_t n_max);

// Non-decreasing positive integer target sizes λ_n.
class LambdaSpec {
 public:
  // λ_n = max(1, floor(log(n log n)/log 2)); λ_1 = 1.
  static LambdaSpec log_log();
  static LambdaSpec constant(unsigned value);
  static LambdaSpec table(std::vector<unsigned> values);

  unsigned operator()(std::size_t n) const;  // 1-based
  std::size_t table_limit() const;           // 0 = unbounded
  const char* name() const;

 private:
  enum class Kind { log_log, constant, table };
  Kind kind_ = Kind::log_log;
  unsigned constant_ = 1;
  std::vector<unsigned> table_;
};

struct ShrinkingTargetPath {
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  bool forced_zero = false;
  std::vector<std::size_t> hits;        // N with x_{N+1} = ... = x_{N+λ_N} = 0
  std::vector<double> window_averages;  // index N-1 holds the window value at N
};

// Simulates the symmetric Bernoulli shift and records, for every N up to
// n_max, the shrinking-target event and the window average
// (1/2N) sum_{n<2N} n 1[x_{2N-n+1} = ... = x_{2N-n+λ_n} = 0].
// The n = N term alone forces window >= 1/2 whenever the event holds.
ShrinkingTargetPath shrinking_target_sim(const LambdaSpec& lambda,
                                         std::size_t n_max, std::uint64_t seed,
                                         bool force_zero = false);

struct HitFrequency {
  std::size_t n;
  double empirical;  // fraction of paths with the event at this N
  double exact;      // 2^{-λ_N}
  double sigma;      // binomial standard deviation of the empirical mean
};

// Monte-Carlo event frequencies across independent paths (derived seeds),
// evaluated at the requested indices only.
std::vector<HitFrequency> ensemble_hit_frequency(
    const LambdaSpec& lambda, const std::vector<std::size_t>& n_list,
    std::size_t paths, std::uint64_t seed);

}  // namespace furst
