#include "furst/semigroup.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace furst {

SemigroupBasis::SemigroupBasis(std::vector<unsigned long> generators)
    : gens_(std::move(generators)) {
  if (gens_.empty()) throw std::invalid_argument("basis: no generators");
  std::sort(gens_.begin(), gens_.end());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i] < 2) throw std::invalid_argument("basis: generator < 2");
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      if (std::gcd(gens_[i], gens_[j]) != 1)
        throw std::invalid_argument("basis: generators not pairwise coprime");
    }
  }
  logs_.reserve(gens_.size());
  for (unsigned long g : gens_) logs_.push_back(std::log(static_cast<double>(g)));
}

bool SemigroupBasis::all_prime() const {
  for (unsigned long g : gens_) {
    mpz_class z(static_cast<unsigned long>(g));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) return false;
  }
  return true;
}

double SmoothNumber::log_value(const SemigroupBasis& basis) const {
  double s = 0.0;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    s += static_cast<double>(exponents[i]) * basis.log_generator(i);
  return s;
}

namespace {

struct HeapNode {
  mpz_class value;
  std::vector<unsigned> exponents;
  std::size_t max_index;  // children may only multiply generators [0, max_index]
};

struct HeapCmp {
  bool operator()(const HeapNode& a, const HeapNode& b) const {
    return a.value > b.value;  // min-heap
  }
};

// Core merge.  Each exponent vector is produced exactly once because a node
// may only extend generators up to its own max_index.
template <typename Stop, typename Emit>
void run_enumeration(const SemigroupBasis& basis, Stop stop, Emit emit) {
  const auto& gens = basis.generators();
  std::priority_queue<HeapNode, std::vector<HeapNode>, HeapCmp> heap;
  heap.push(HeapNode{mpz_class(1), std::vector<unsigned>(gens.size(), 0),
                     gens.size() - 1});
  mpz_class prev(0);
  while (!heap.empty()) {
    HeapNode node = heap.top();
    heap.pop();
    if (stop(node.value)) break;
    // Pairwise coprime generators make values distinct; keep a cheap guard.
    if (node.value <= prev) continue;
    prev = node.value;
    if (!emit(node)) break;
    for (std::size_t j = 0; j <= node.max_index; ++j) {
      HeapNode child;
      child.value = node.value * gens[j];
      child.exponents = node.exponents;
      ++child.exponents[j];
      child.max_index = j;
      heap.push(std::move(child));
    }
  }
}

}  // namespace

std::vector<SmoothNumber> enumerate_upto(const SemigroupBasis& basis,
                                         const mpz_class& limit,
                                         bool include_unit) {
  std::vector<SmoothNumber> out;
  if (limit < 1) return out;
  run_enumeration(
      basis, [&](const mpz_class& v) { return v > limit; },
      [&](const HeapNode& node) {
        if (node.value != 1 || include_unit)
          out.push_back(SmoothNumber{node.exponents, node.value});
        return true;
      });
  return out;
}

std::vector<SmoothNumber> enumerate_first(const SemigroupBasis& basis,
                                          std::size_t count,
                                          bool include_unit) {
  std::vector<SmoothNumber> out;
  out.reserve(count);
  if (count == 0) return out;
  run_enumeration(
      basis, [](const mpz_class&) { return false; },
      [&](const HeapNode& node) {
        if (node.value != 1 || include_unit)
          out.push_back(SmoothNumber{node.exponents, node.value});
        return out.size() < count;
      });
  return out;
}

namespace {

// Exact count of k >= 0 with base^k <= cap, by repeated multiplication.
// Fallback for rows where the floating floor cannot be certified.
unsigned long long exact_power_count(unsigned long base, const mpz_class& cap) {
  if (cap < 1) return 0;
  unsigned long long count = 1;  // k = 0
  mpz_class p(base);
  while (p <= cap) {
    ++count;
    p *= base;
  }
  return count;
}

struct MpfrLog {
  mpfr_t down, up;
  explicit MpfrLog(mpfr_prec_t prec) {
    mpfr_init2(down, prec);
    mpfr_init2(up, prec);
  }
  ~MpfrLog() {
    mpfr_clear(down);
    mpfr_clear(up);
  }
  MpfrLog(const MpfrLog&) = delete;
  MpfrLog& operator=(const MpfrLog&) = delete;
};

}  // namespace

unsigned long long count_upto(const SemigroupBasis& basis,
                              const mpz_class& limit, bool include_unit) {
  if (limit < 1) return 0;
  const auto& gens = basis.generators();
  const std::size_t s = gens.size();
  constexpr mpfr_prec_t kPrec = 192;

  // log(limit) and log(q_i) as directed-rounding brackets.
  MpfrLog loglimit(kPrec);
  {
    mpfr_t tmp;
    mpfr_init2(tmp, kPrec);
    mpfr_set_z(tmp, limit.get_mpz_t(), MPFR_RNDD);
    mpfr_log(loglimit.down, tmp, MPFR_RNDD);
    mpfr_set_z(tmp, limit.get_mpz_t(), MPFR_RNDU);
    mpfr_log(loglimit.up, tmp, MPFR_RNDU);
    mpfr_clear(tmp);
  }
  std::vector<MpfrLog*> glog(s);
  for (std::size_t i = 0; i < s; ++i) {
    glog[i] = new MpfrLog(kPrec);
    mpfr_set_ui(glog[i]->down, gens[i], MPFR_RNDD);
    mpfr_log(glog[i]->down, glog[i]->down, MPFR_RNDD);
    mpfr_set_ui(glog[i]->up, gens[i], MPFR_RNDU);
    mpfr_log(glog[i]->up, glog[i]->up, MPFR_RNDU);
  }

  unsigned long long total = 0;
  const unsigned long last = gens[s - 1];

  // Walk exponent vectors of all generators but the last, keeping the exact
  // partial product; count the last exponent by a certified floor of
  // (log limit - sum e_i log q_i) / log q_last.
  mpfr_t budget_lo, budget_hi, q_lo, q_hi;
  mpfr_init2(budget_lo, kPrec);
  mpfr_init2(budget_hi, kPrec);
  mpfr_init2(q_lo, kPrec);
  mpfr_init2(q_hi, kPrec);

  // Depth-first over exponents of generators [0, s-2]; at gen == s-1 count
  // the row.  For a single-generator basis this is just one row.
  std::vector<std::pair<mpz_class, std::size_t>> work;
  work.emplace_back(mpz_class(1), 0);
  while (!work.empty()) {
    auto [product, gi] = work.back();
    work.pop_back();
    if (gi + 1 < s) {
      mpz_class p = product;
      while (p <= limit) {
        work.emplace_back(p, gi + 1);
        p *= gens[gi];
      }
      continue;
    }
    // Row: count k >= 0 with product * last^k <= limit.
    // budget = log(limit) - log(product), bracketed.
    mpfr_t logprod_d, logprod_u;
    mpfr_init2(logprod_d, kPrec);
    mpfr_init2(logprod_u, kPrec);
    mpfr_set_z(logprod_d, product.get_mpz_t(), MPFR_RNDD);
    mpfr_log(logprod_d, logprod_d, MPFR_RNDD);
    mpfr_set_z(logprod_u, product.get_mpz_t(), MPFR_RNDU);
    mpfr_log(logprod_u, logprod_u, MPFR_RNDU);
    mpfr_sub(budget_lo, loglimit.down, logprod_u, MPFR_RNDD);
    mpfr_sub(budget_hi, loglimit.up, logprod_d, MPFR_RNDU);
    mpfr_div(q_lo, budget_lo, glog[s - 1]->up, MPFR_RNDD);
    mpfr_div(q_hi, budget_hi, glog[s - 1]->down, MPFR_RNDU);
    const double f_lo = std::floor(mpfr_get_d(q_lo, MPFR_RNDD));
    const double f_hi = std::floor(mpfr_get_d(q_hi, MPFR_RNDU));
    if (f_lo == f_hi && f_lo >= 0.0 && f_lo < 9.0e15) {
      total += static_cast<unsigned long long>(f_lo) + 1;
    } else {
      // Interval straddles an integer (e.g. limit is itself a semigroup
      // element): decide the row exactly.
      mpz_class cap = limit / product;
      total += exact_power_count(last, cap);
    }
    mpfr_clear(logprod_d);
    mpfr_clear(logprod_u);
  }

  mpfr_clear(budget_lo);
  mpfr_clear(budget_hi);
  mpfr_clear(q_lo);
  mpfr_clear(q_hi);
  for (auto* p : glog) delete p;

  if (!include_unit) --total;  // the all-zero exponent vector
  return total;
}

SmoothNumber nth_term(const SemigroupBasis& basis, std::size_t n) {
  if (n == 0) throw std::invalid_argument("nth_term: index is 1-based");
  auto terms = enumerate_first(basis, n, /*include_unit=*/false);
  return terms.back();
}

double ramanujan_estimate(double n) {
  if (n < 1.0) throw std::invalid_argument("ramanujan_estimate: n >= 1 required");
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  return std::log(2.0 * n) * std::log(3.0 * n) / (2.0 * l2 * l3) + 0.5;
}

std::vector<GapReport> gap_stats(const SemigroupBasis& basis, std::size_t n_max,
                                 double rho, double r) {
  if (n_max == 0) return {};
  auto terms = enumerate_first(basis, n_max + 1, /*include_unit=*/false);
  std::vector<GapReport> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const SmoothNumber& cur = terms[n - 1];
    const SmoothNumber& next = terms[n];
    GapReport g;
    g.index = n;
    g.gap = next.value - cur.value;
    // Values can exceed double range only far beyond desk scale; the ratio
    // itself is always in (0, 1].
    mpq_class rel(g.gap, cur.value);
    rel.canonicalize();
    g.relative_gap = rel.get_d();
    const double logs = cur.log_value(basis);
    g.lower_norm = g.relative_gap * std::pow(logs, rho);
    g.upper_norm = g.relative_gap * std::pow(static_cast<double>(n), r);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace furst
