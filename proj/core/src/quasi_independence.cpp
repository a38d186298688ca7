#include "furst/quasi_independence.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "furst/errors.hpp"

namespace furst {

namespace {

constexpr std::size_t kExactCutoff = 40;
constexpr std::size_t kMaxExactCutoff = 24;
constexpr std::size_t kGreedyExactLimit = 26;   // exact adds while |B|+1 <= this
constexpr std::size_t kGreedyFinalCertify = 30; // full recheck if B ends <= this
constexpr unsigned kGreedyBoundedLength = 8;

const std::uint64_t* pow3_table() {
  static const auto table = [] {
    static std::uint64_t t[41];
    t[0] = 1;
    for (int i = 1; i <= 40; ++i) t[i] = 3 * t[i - 1];
    return t;
  }();
  return table;
}

std::vector<std::uint64_t> sorted_validated(const std::vector<std::uint64_t>& a) {
  std::vector<std::uint64_t> v(a);
  std::sort(v.begin(), v.end());
  mpz_class total(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      throw std::invalid_argument("set elements must be positive");
    if (i > 0 && v[i] == v[i - 1])
      throw std::invalid_argument("set elements must be distinct");
    total += mpz_class(static_cast<unsigned long>(v[i]));
  }
  if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62)
    throw std::invalid_argument("element sum exceeds the exact-sum range");
  return v;
}

bool superincreasing(const std::vector<std::uint64_t>& sorted_asc) {
  std::uint64_t prefix = 0;
  for (std::uint64_t v : sorted_asc) {
    if (v <= prefix) return false;
    prefix += v;
  }
  return true;
}

// Walk all sign assignments over vals[idx..); digit 1 = +1, digit 2 = -1 in
// the base-3 code aligned with vals.
template <typename Emit>
void enum_signed(const std::vector<std::uint64_t>& vals, std::size_t idx,
                 long long sum, std::uint64_t code, Emit&& emit) {
  if (idx == vals.size()) {
    emit(sum, code);
    return;
  }
  const long long v = static_cast<long long>(vals[idx]);
  const std::uint64_t* p3 = pow3_table();
  enum_signed(vals, idx + 1, sum, code, emit);
  enum_signed(vals, idx + 1, sum + v, code + p3[idx], emit);
  enum_signed(vals, idx + 1, sum - v, code + 2 * p3[idx], emit);
}

// Same walk keeping at most max_nonzero signed entries.
template <typename Emit>
void enum_signed_bounded(const std::vector<std::uint64_t>& vals, std::size_t idx,
                         long long sum, std::uint64_t code, unsigned used,
                         unsigned max_nonzero, Emit&& emit) {
  if (idx == vals.size()) {
    emit(sum, code, used);
    return;
  }
  const std::uint64_t* p3 = pow3_table();
  enum_signed_bounded(vals, idx + 1, sum, code, used, max_nonzero, emit);
  if (used < max_nonzero) {
    const long long v = static_cast<long long>(vals[idx]);
    enum_signed_bounded(vals, idx + 1, sum + v, code + p3[idx], used + 1,
                        max_nonzero, emit);
    enum_signed_bounded(vals, idx + 1, sum - v, code + 2 * p3[idx], used + 1,
                        max_nonzero, emit);
  }
}

SignedRelation relation_from_codes(const std::vector<std::uint64_t>& sorted_asc,
                                   std::size_t half, std::uint64_t left_code,
                                   std::uint64_t right_code) {
  SignedRelation r;
  r.support = sorted_asc;
  r.signs.assign(sorted_asc.size(), 0);
  const auto decode = [&](std::uint64_t code, std::size_t offset,
                          std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned digit = code % 3;
      code /= 3;
      if (digit == 1) r.signs[offset + i] = 1;
      if (digit == 2) r.signs[offset + i] = -1;
    }
  };
  decode(left_code, 0, half);
  decode(right_code, half, sorted_asc.size() - half);
  for (int s : r.signs)
    if (s != 0) ++r.length;
  return r;
}

// Does some sign assignment over `values` sum to `target`?  Existence only.
bool target_representable(const std::vector<std::uint64_t>& values,
                          std::uint64_t target) {
  std::uint64_t total = 0;
  for (std::uint64_t v : values) total += v;
  if (target > total) return false;
  const std::size_t half = values.size() / 2;
  std::vector<std::uint64_t> left(values.begin(), values.begin() + half);
  std::vector<std::uint64_t> right(values.begin() + half, values.end());
  std::vector<long long> sums;
  sums.reserve(pow3_table()[left.size()]);
  enum_signed(left, 0, 0, 0, [&](long long s, std::uint64_t) { sums.push_back(s); });
  std::sort(sums.begin(), sums.end());
  bool found = false;
  const long long t = static_cast<long long>(target);
  enum_signed(right, 0, 0, 0, [&](long long s, std::uint64_t) {
    if (found) return;
    found = std::binary_search(sums.begin(), sums.end(), t - s);
  });
  return found;
}

// Bounded-length variant: sign assignment with at most max_nonzero nonzero
// entries summing to target.
bool target_representable_bounded(const std::vector<std::uint64_t>& values,
                                  std::uint64_t target, unsigned max_nonzero) {
  const std::size_t half = values.size() / 2;
  std::vector<std::uint64_t> left(values.begin(), values.begin() + half);
  std::vector<std::uint64_t> right(values.begin() + half, values.end());
  std::unordered_map<long long, unsigned> best;
  best.reserve(1024);
  enum_signed_bounded(left, 0, 0, 0, 0, max_nonzero,
                      [&](long long s, std::uint64_t, unsigned used) {
                        auto [it, inserted] = best.try_emplace(s, used);
                        if (!inserted && used < it->second) it->second = used;
                      });
  bool found = false;
  const long long t = static_cast<long long>(target);
  enum_signed_bounded(right, 0, 0, 0, 0, max_nonzero,
                      [&](long long s, std::uint64_t, unsigned used) {
                        if (found) return;
                        auto it = best.find(t - s);
                        if (it != best.end() && it->second + used <= max_nonzero)
                          found = true;
                      });
  return found;
}

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double size_exponent(std::size_t b, std::size_t a) {
  if (a < 2 || b < 2) return 0.0;
  return std::log(static_cast<double>(b)) / std::log(static_cast<double>(a));
}

ExtractionReport make_report(std::vector<std::uint64_t> input,
                             std::vector<std::uint64_t> subset,
                             const char* method, Certification cert,
                             unsigned certified_length) {
  ExtractionReport rep;
  rep.ratio = safe_ratio(subset.size(), input.size());
  rep.exponent = size_exponent(subset.size(), input.size());
  rep.input = std::move(input);
  rep.subset = std::move(subset);
  rep.method = method;
  rep.certification = cert;
  rep.certified_length = certified_length;
  return rep;
}

}  // namespace

bool relation_holds(const SignedRelation& r) {
  if (r.support.size() != r.signs.size()) return false;
  mpz_class sum(0);
  unsigned nonzero = 0;
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    if (r.signs[i] < -1 || r.signs[i] > 1) return false;
    if (r.signs[i] == 0) continue;
    ++nonzero;
    if (r.signs[i] > 0)
      sum += mpz_class(static_cast<unsigned long>(r.support[i]));
    else
      sum -= mpz_class(static_cast<unsigned long>(r.support[i]));
  }
  return nonzero == r.length && nonzero > 0 && sum == 0;
}

const char* certification_name(Certification c) {
  switch (c) {
    case Certification::exact:
      return "exact";
    case Certification::bounded_length:
      return "bounded-length";
    default:
      return "constructive";
  }
}

QiResult is_quasi_independent(const std::vector<std::uint64_t>& a) {
  const auto v = sorted_validated(a);
  if (v.size() > kExactCutoff)
    throw std::invalid_argument("exceeds exact cutoff, use greedy/extraction");
  QiResult out;
  if (v.size() < 3 || superincreasing(v)) {
    out.quasi_independent = true;
    return out;
  }

  const std::size_t half = v.size() / 2;
  std::vector<std::uint64_t> left(v.begin(), v.begin() + half);
  std::vector<std::uint64_t> right(v.begin() + half, v.end());

  std::vector<std::pair<long long, std::uint64_t>> table;
  table.reserve(pow3_table()[left.size()]);
  std::uint64_t left_zero_code = 0;
  enum_signed(left, 0, 0, 0, [&](long long s, std::uint64_t code) {
    if (s == 0 && code != 0 && left_zero_code == 0) left_zero_code = code;
    table.emplace_back(s, code);
  });
  if (left_zero_code != 0) {
    out.witness = relation_from_codes(v, half, left_zero_code, 0);
    return out;
  }
  std::sort(table.begin(), table.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  std::uint64_t hit_left = 0, hit_right = 0;
  bool found = false;
  enum_signed(right, 0, 0, 0, [&](long long s, std::uint64_t code) {
    if (found || code == 0) return;
    auto it = std::lower_bound(
        table.begin(), table.end(), -s,
        [](const auto& entry, long long key) { return entry.first < key; });
    if (it != table.end() && it->first == -s) {
      found = true;
      hit_left = it->second;
      hit_right = code;
    }
  });
  if (found) {
    out.witness = relation_from_codes(v, half, hit_left, hit_right);
    return out;
  }
  out.quasi_independent = true;
  return out;
}

std::optional<SignedRelation> find_relation_bounded(
    const std::vector<std::uint64_t>& a, unsigned max_length) {
  const auto v = sorted_validated(a);
  if (max_length < 3 || v.size() < 3) return std::nullopt;
  if (superincreasing(v)) return std::nullopt;

  const std::size_t half = v.size() / 2;
  const unsigned l = std::min<unsigned>(max_length, static_cast<unsigned>(v.size()));
  // Work estimate per half: sum_{i<=l} C(h,i) 2^i.
  const auto work = [&](std::size_t h) {
    double total = 0, binom = 1;
    for (unsigned i = 0; i <= std::min<unsigned>(l, h); ++i) {
      total += binom * std::ldexp(1.0, i);
      binom = binom * static_cast<double>(h - i) / static_cast<double>(i + 1);
    }
    return total;
  };
  if (work(half) + work(v.size() - half) > 2e8)
    throw NumericalError("bounded relation scan too large at this cutoff");

  std::vector<std::uint64_t> left(v.begin(), v.begin() + half);
  std::vector<std::uint64_t> right(v.begin() + half, v.end());

  struct Entry {
    unsigned count;
    std::uint64_t code;
  };
  std::unordered_map<long long, Entry> best;
  best.reserve(4096);
  std::optional<SignedRelation> witness;
  enum_signed_bounded(left, 0, 0, 0, 0, l,
                      [&](long long s, std::uint64_t code, unsigned used) {
                        if (witness) return;
                        if (s == 0 && code != 0) {
                          witness = relation_from_codes(v, half, code, 0);
                          return;
                        }
                        auto [it, inserted] = best.try_emplace(s, Entry{used, code});
                        if (!inserted && used < it->second.count)
                          it->second = Entry{used, code};
                      });
  if (witness) return witness;

  enum_signed_bounded(right, 0, 0, 0, 0, l,
                      [&](long long s, std::uint64_t code, unsigned used) {
                        if (witness || code == 0) return;
                        auto it = best.find(-s);
                        if (it == best.end()) return;
                        if (it->second.count + used <= l)
                          witness = relation_from_codes(v, half, it->second.code, code);
                      });
  return witness;
}

ExtractionReport max_quasi_independent_exact(const std::vector<std::uint64_t>& a) {
  const auto sorted_asc = sorted_validated(a);
  if (sorted_asc.size() > kMaxExactCutoff)
    throw std::invalid_argument("exceeds exact search cutoff");

  std::vector<std::uint64_t> desc(sorted_asc.rbegin(), sorted_asc.rend());
  const std::size_t n = desc.size();

  // Greedy seed for the bound.
  std::vector<std::uint64_t> best;
  {
    std::vector<std::uint64_t> b;
    for (std::uint64_t x : desc) {
      std::vector<std::uint64_t> asc(b.rbegin(), b.rend());
      if (!target_representable(asc, x)) b.push_back(x);
    }
    best = b;
  }

  std::vector<std::uint64_t> current;
  const auto dfs = [&](auto&& self, std::size_t idx) -> void {
    if (current.size() + (n - idx) <= best.size()) return;
    if (idx == n) {
      best = current;
      return;
    }
    const std::uint64_t x = desc[idx];
    std::vector<std::uint64_t> asc(current.rbegin(), current.rend());
    if (!target_representable(asc, x)) {
      current.push_back(x);
      self(self, idx + 1);
      current.pop_back();
    }
    self(self, idx + 1);
  };
  dfs(dfs, 0);

  std::sort(best.begin(), best.end());
  return make_report(sorted_asc, std::move(best), "exact", Certification::exact, 0);
}

ExtractionReport extract_greedy(const std::vector<std::uint64_t>& a) {
  const auto sorted_asc = sorted_validated(a);
  if (superincreasing(sorted_asc)) {
    return make_report(sorted_asc, sorted_asc, "greedy", Certification::exact, 0);
  }

  std::vector<std::uint64_t> desc(sorted_asc.rbegin(), sorted_asc.rend());
  std::vector<std::uint64_t> b;  // kept ascending
  bool used_bounded = false;
  for (std::uint64_t x : desc) {
    bool blocked;
    if (b.size() + 1 <= kGreedyExactLimit) {
      blocked = target_representable(b, x);
    } else {
      used_bounded = true;
      blocked = target_representable_bounded(b, x, kGreedyBoundedLength - 1);
    }
    if (!blocked) b.insert(std::lower_bound(b.begin(), b.end(), x), x);
  }

  Certification cert = Certification::exact;
  unsigned certified_length = 0;
  if (used_bounded) {
    if (b.size() <= kGreedyFinalCertify) {
      // The bounded adds may have admitted a long relation; certify fully and
      // repair by dropping the smallest participant until clean.
      for (;;) {
        QiResult res = is_quasi_independent(b);
        if (res.quasi_independent) break;
        const auto& w = *res.witness;
        for (std::size_t i = 0; i < w.support.size(); ++i) {
          if (w.signs[i] != 0) {
            b.erase(std::find(b.begin(), b.end(), w.support[i]));
            break;
          }
        }
      }
      cert = Certification::exact;
    } else {
      cert = Certification::bounded_length;
      certified_length = kGreedyBoundedLength;
    }
  }
  return make_report(sorted_asc, std::move(b), "greedy", cert, certified_length);
}

std::vector<std::uint64_t> dyadic_block(const std::vector<std::uint64_t>& sorted_set,
                                        unsigned n) {
  if (n > 62) throw std::invalid_argument("dyadic index out of range");
  const std::uint64_t lo = std::uint64_t{1} << n;
  const std::uint64_t hi = std::uint64_t{1} << (n + 1);
  auto first = std::lower_bound(sorted_set.begin(), sorted_set.end(), lo);
  auto last = std::lower_bound(sorted_set.begin(), sorted_set.end(), hi);
  return {first, last};
}

ExtractionReport case_split_extract(const BlockedSet& a) {
  if (a.values.empty() || a.values.size() != a.blocks.size())
    throw std::invalid_argument("block metadata missing");

  std::map<int, std::vector<std::uint64_t>> by_block;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    by_block[a.blocks[i]].push_back(a.values[i]);

  const std::size_t total = a.values.size();
  const std::size_t root =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(total))));

  // Case I candidate: the heaviest block.
  const std::map<int, std::vector<std::uint64_t>>::value_type* heaviest = nullptr;
  for (const auto& kv : by_block) {
    if (!heaviest || kv.second.size() > heaviest->second.size()) heaviest = &kv;
  }

  // Case II candidate: the largest element of every other occupied block.
  std::vector<std::uint64_t> alternating;
  {
    std::size_t pos = 0;
    for (const auto& kv : by_block) {
      if (pos % 2 == 0)
        alternating.push_back(*std::max_element(kv.second.begin(), kv.second.end()));
      ++pos;
    }
  }

  std::vector<std::uint64_t> chosen;
  if (heaviest->second.size() >= root &&
      heaviest->second.size() >= alternating.size()) {
    chosen = heaviest->second;
  } else {
    chosen = alternating;
  }
  std::sort(chosen.begin(), chosen.end());

  Certification cert = Certification::constructive;
  if (chosen.size() <= kExactCutoff) {
    QiResult res = is_quasi_independent(chosen);
    if (!res.quasi_independent)
      throw std::invalid_argument(
          "case split input violates the per-block quasi-independence premise");
    cert = Certification::exact;
  }
  std::vector<std::uint64_t> input(a.values);
  std::sort(input.begin(), input.end());
  return make_report(std::move(input), std::move(chosen), "dyadic-pick", cert, 0);
}

MeshExponent mesh_p_bound(
    const std::vector<std::pair<std::size_t, std::size_t>>& counts) {
  if (counts.size() < 3)
    throw std::invalid_argument("mesh fit needs at least 3 points");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].first < 100)
      throw std::invalid_argument("mesh fit needs N >= 100");
    if (i > 0 && counts[i].first <= counts[i - 1].first)
      throw std::invalid_argument("mesh fit needs increasing N");
    if (counts[i].second < 1)
      throw std::invalid_argument("mesh fit needs positive counts");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(counts.size());
  for (const auto& [n, c] : counts) {
    const double x = std::log(std::log(static_cast<double>(n)));
    const double y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  MeshExponent out;
  out.gamma = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  out.c = std::exp((sy - out.gamma * sx) / m);
  out.p_min = 2.0 * out.gamma / (out.gamma + 1.0);
  return out;
}

}  // namespace furst
