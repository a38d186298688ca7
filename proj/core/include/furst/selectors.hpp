#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "furst/quasi_independence.hpp"

namespace furst {

// Inclusion probabilities δ_k for the Bernoulli selector process
// R = {k : ξ_k = 1}, P(ξ_k = 1) = δ_k.
class SelectorProfile {
 public:
  enum class Kind { furstenberg, reciprocal, constant, custom };

  // δ_1 = 0, δ_k = log k / k for k >= 2 (log 2/2 < 1, so no clamping).
  static SelectorProfile furstenberg();
  // δ_k = c/k; c in (0, 1].  With c = 1 the index k = 1 is deterministic.
  static SelectorProfile reciprocal(double c);
  static SelectorProfile constant(double v);  // v in [0, 1)
  static SelectorProfile custom(std::vector<double> table);  // entries in [0,1)

  double delta(std::size_t k) const;  // 1-based; custom tables are 0 beyond
  // m_N = sum_{k<=N} δ_k, compensated summation.
  double partial_sum(std::size_t n) const;
  // sum_{k<=N} δ_k (1 - δ_k): the Poisson-binomial variance of |R_N|.
  double variance_sum(std::size_t n) const;
  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const std::vector<double>& table() const { return table_; }
  std::string id() const;

 private:
  SelectorProfile() = default;
  Kind kind_ = Kind::constant;
  double param_ = 0.0;
  std::vector<double> table_;
};

struct SelectorSample {
  std::string profile_id;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::vector<std::uint64_t> members;  // sorted subset of [1, horizon]
};

// One uniform draw per index; identical (profile, seed, N) regenerate the
// identical member set.
SelectorSample sample_selector(const SelectorProfile& profile, std::size_t n,
                               std::uint64_t seed);

// {k >= 1 : k*m + j in R}, the arithmetic-subsequence transformer used to
// split a sample into m pieces.
SelectorSample dilute(const SelectorSample& sample, unsigned m, unsigned j);

struct GrowthReport {
  std::size_t horizon;
  std::size_t size;        // |R_N|
  double expected;         // m_N
  double ratio;            // |R_N| / m_N (inf when m_N = 0)
  double normalized;       // 2 |R_N| / log^2 N
};
GrowthReport growth_report(const SelectorSample& sample,
                           const SelectorProfile& profile);

struct GapRecord {
  std::size_t index;       // n of the gap t_{n+1} - t_n
  std::uint64_t value;     // t_n
  std::uint64_t next;      // t_{n+1}
  std::uint64_t gap;
  double limsup_normalized;  // gap / ((t_n/log t_n) log log t_n)
  double liminf_normalized;  // gap / (t_n/(log t_n)^{3+delta})
  double successive_ratio;   // t_{n+1}/t_n
};
std::vector<GapRecord> gap_report(const SelectorSample& sample, double delta);

// m_N / log N at each horizon in the increasing list.
std::vector<double> bourgain_ratio(const SelectorProfile& profile,
                                   const std::vector<std::size_t>& n_list);

// Upper bound (B^n/n^n) sum_{j>A} δ_j^2 m_j^{n-2} with B = 4e; the sum is
// truncated once an integral-comparison tail bound certifies the remainder
// below 10^-3 of the partial sum.
double relation_bound(unsigned n, double a, const SelectorProfile& profile);

struct BlockAnalysis {
  unsigned block;               // n
  std::uint64_t threshold;      // A_n = ceil(e^n)
  std::size_t head_count;       // |R ∩ [1, A_n]|
  unsigned scan_length;         // relation length bound used
  std::size_t tail_size;        // |R ∩ [A_n, horizon]|
  std::optional<SignedRelation> relation;  // witness if one exists
};

// Per-block head counts and bounded exhaustive relation scans in
// R ∩ [A_n, horizon], one entry per n with A_n <= horizon.
std::vector<BlockAnalysis> kk_block_analysis(const SelectorSample& sample,
                                             unsigned l_max);

struct BlockExtraction {
  unsigned block;             // dyadic index n
  std::size_t block_size;     // |R ∩ [2^n, 2^{n+1})|
  ExtractionReport report;
};

struct DensityPoint {
  std::size_t n;         // N = 2^n
  std::size_t subset_count;   // |T' ∩ [1, N]|
  std::size_t sample_count;   // |T ∩ [1, N]|
  double ratio;
};

struct BigSubsetReport {
  std::vector<BlockExtraction> blocks;
  std::vector<std::uint64_t> members;  // T' = union of extracted blocks
  std::vector<DensityPoint> density;
};

// Greedy quasi-independent extraction inside every dyadic block up to
// n_max, with the density profile of the union.
BigSubsetReport build_big_subset(const SelectorSample& sample, unsigned n_max);

}  // namespace furst
