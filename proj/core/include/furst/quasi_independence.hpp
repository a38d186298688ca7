#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace furst {

// A zero relation sum signs[i] * support[i] = 0 with signs in {-1,0,+1}.
// For distinct positive integers any nonzero relation has length >= 3.
struct SignedRelation {
  std::vector<std::uint64_t> support;  // sorted input set
  std::vector<int> signs;              // aligned with support
  unsigned length = 0;                 // number of nonzero signs
};

// Exact verification with arbitrary-precision accumulation.
bool relation_holds(const SignedRelation& r);

struct QiResult {
  bool quasi_independent = false;
  std::optional<SignedRelation> witness;
};

// Exhaustive tester: meet-in-the-middle over {-1,0,1}^|A| split in halves.
// |A| <= 40 by contract (memory grows as 3^(|A|/2); sizes beyond ~30 are
// impractical and sizes > 40 are rejected outright).
QiResult is_quasi_independent(const std::vector<std::uint64_t>& a);

// Exhaustive search restricted to relations with at most max_length nonzero
// signs (per-half subset enumeration, no cutoff on |A| itself).
std::optional<SignedRelation> find_relation_bounded(
    const std::vector<std::uint64_t>& a, unsigned max_length);

enum class Certification { exact, bounded_length, constructive };

const char* certification_name(Certification c);

struct ExtractionReport {
  std::vector<std::uint64_t> input;
  std::vector<std::uint64_t> subset;
  std::string method;            // "exact" | "greedy" | "dyadic-pick"
  Certification certification = Certification::exact;
  unsigned certified_length = 0; // relation length bound when bounded_length
  double ratio = 0.0;            // |B| / |A|
  double exponent = 0.0;         // log|B| / log|A| when both >= 2
};

// Maximum-cardinality quasi-independent subset by branch and bound;
// |A| <= 24 by contract.
ExtractionReport max_quasi_independent_exact(const std::vector<std::uint64_t>& a);

// Decreasing-value greedy scan.  Adds x when B ∪ {x} stays relation-free:
// exact incremental test while the augmented set has <= 26 elements, then a
// bounded search up to length 8; if the bounded path was used and the final
// set has <= 30 elements, a full exact certification pass runs at the end.
ExtractionReport extract_greedy(const std::vector<std::uint64_t>& a);

// set ∩ [2^n, 2^{n+1})
std::vector<std::uint64_t> dyadic_block(const std::vector<std::uint64_t>& sorted_set,
                                        unsigned n);

// Input for the two-case extraction: values with their dyadic block indices,
// where each block's slice is known quasi-independent (e.g. an extracted E_n).
struct BlockedSet {
  std::vector<std::uint64_t> values;
  std::vector<int> blocks;  // aligned with values
};

// Either one block holds >= sqrt(|A|) of the points (return them) or one
// point from every other occupied block gives ratio-2 growth, which is
// superincreasing and hence quasi-independent.
ExtractionReport case_split_extract(const BlockedSet& a);

struct MeshExponent {
  double gamma;   // fitted exponent of |E_N| ~ c (log N)^gamma
  double c;       // fitted constant
  double p_min;   // 2 gamma / (gamma + 1)
};

// Least-squares fit of log count against log log N; at least 3 points with
// increasing N >= 100 required.
MeshExponent mesh_p_bound(
    const std::vector<std::pair<std::size_t, std::size_t>>& counts);

}  // namespace furst
