#include "furst/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "furst/errors.hpp"
#include "furst/rng.hpp"

namespace furst {

namespace {

constexpr double kTailFraction = 1e-3;
constexpr std::uint64_t kTailHorizonCap = std::uint64_t{1} << 31;

double checked_unit_probability(double v, const char* what) {
  if (!(v >= 0.0) || v >= 1.0)
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1)");
  return v;
}

std::string format_tag(const char* name, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s(%.17g)", name, value);
  return buf;
}

// n! / (k! (n-k)!) in floating point; n stays small here.
double binom(unsigned n, unsigned k) {
  double out = 1.0;
  for (unsigned i = 0; i < k; ++i)
    out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return out;
}

// G[m] = Gamma(m+1, x) = int_x^inf t^m e^{-t} dt via the upward recurrence
// Gamma(m+1, x) = m Gamma(m, x) + x^m e^{-x}.
std::vector<double> upper_gamma_table(unsigned m_max, double x) {
  std::vector<double> g(m_max + 1);
  const double ex = std::exp(-x);
  g[0] = ex;
  double xpow = 1.0;
  for (unsigned m = 1; m <= m_max; ++m) {
    xpow *= x;
    g[m] = static_cast<double>(m) * g[m - 1] + xpow * ex;
  }
  return g;
}

}  // namespace

SelectorProfile SelectorProfile::furstenberg() {
  SelectorProfile p;
  p.kind_ = Kind::furstenberg;
  return p;
}

SelectorProfile SelectorProfile::reciprocal(double c) {
  if (!(c > 0.0) || c > 1.0)
    throw std::invalid_argument("reciprocal scale must lie in (0, 1]");
  SelectorProfile p;
  p.kind_ = Kind::reciprocal;
  p.param_ = c;
  return p;
}

SelectorProfile SelectorProfile::constant(double v) {
  SelectorProfile p;
  p.kind_ = Kind::constant;
  p.param_ = checked_unit_probability(v, "constant probability");
  return p;
}

SelectorProfile SelectorProfile::custom(std::vector<double> table) {
  for (double v : table) checked_unit_probability(v, "table probability");
  SelectorProfile p;
  p.kind_ = Kind::custom;
  p.table_ = std::move(table);
  return p;
}

double SelectorProfile::delta(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("selector indices start at 1");
  switch (kind_) {
    case Kind::furstenberg:
      return k == 1 ? 0.0
                    : std::log(static_cast<double>(k)) / static_cast<double>(k);
    case Kind::reciprocal:
      return param_ / static_cast<double>(k);
    case Kind::constant:
      return param_;
    default:
      return k <= table_.size() ? table_[k - 1] : 0.0;
  }
}

double SelectorProfile::partial_sum(std::size_t n) const {
  KahanSum sum;
  for (std::size_t k = 1; k <= n; ++k) sum.add(delta(k));
  return sum.value();
}

double SelectorProfile::variance_sum(std::size_t n) const {
  KahanSum sum;
  for (std::size_t k = 1; k <= n; ++k) {
    const double d = delta(k);
    sum.add(d * (1.0 - d));
  }
  return sum.value();
}

std::string SelectorProfile::id() const {
  switch (kind_) {
    case Kind::furstenberg:
      return "furstenberg";
    case Kind::reciprocal:
      return format_tag("reciprocal", param_);
    case Kind::constant:
      return format_tag("constant", param_);
    default: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "custom(%zu)", table_.size());
      return buf;
    }
  }
}

SelectorSample sample_selector(const SelectorProfile& profile, std::size_t n,
                               std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  SelectorSample out;
  out.profile_id = profile.id();
  out.seed = seed;
  out.horizon = n;
  Rng rng(mix_seed(seed, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    const double u = rng.next_unit();
    if (u < profile.delta(k)) out.members.push_back(k);
  }
  return out;
}

SelectorSample dilute(const SelectorSample& sample, unsigned m, unsigned j) {
  if (m == 0) throw std::invalid_argument("dilution modulus must be positive");
  if (j >= m) throw std::invalid_argument("dilution offset must be below the modulus");
  SelectorSample out;
  out.profile_id = sample.profile_id + "|dilute(" + std::to_string(m) + "," +
                   std::to_string(j) + ")";
  out.seed = sample.seed;
  out.horizon = sample.horizon >= j ? (sample.horizon - j) / m : 0;
  for (std::uint64_t v : sample.members) {
    if (v > j && (v - j) % m == 0) out.members.push_back((v - j) / m);
  }
  return out;
}

GrowthReport growth_report(const SelectorSample& sample,
                           const SelectorProfile& profile) {
  GrowthReport r;
  r.horizon = sample.horizon;
  r.size = sample.members.size();
  r.expected = profile.partial_sum(sample.horizon);
  if (r.expected > 0.0)
    r.ratio = static_cast<double>(r.size) / r.expected;
  else
    r.ratio = r.size == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double logn = std::log(static_cast<double>(sample.horizon));
  r.normalized = logn > 0.0
                     ? 2.0 * static_cast<double>(r.size) / (logn * logn)
                     : std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::vector<GapRecord> gap_report(const SelectorSample& sample, double delta) {
  if (sample.members.size() < 2)
    throw std::invalid_argument("gap statistics need at least two members");
  if (!(delta >= 0.0))
    throw std::invalid_argument("gap exponent shift must be non-negative");
  std::vector<GapRecord> out;
  out.reserve(sample.members.size() - 1);
  for (std::size_t i = 0; i + 1 < sample.members.size(); ++i) {
    GapRecord g;
    g.index = i + 1;
    g.value = sample.members[i];
    g.next = sample.members[i + 1];
    g.gap = g.next - g.value;
    const double t = static_cast<double>(g.value);
    g.successive_ratio = static_cast<double>(g.next) / t;
    if (g.value >= 3) {
      const double lt = std::log(t);
      g.limsup_normalized =
          static_cast<double>(g.gap) / ((t / lt) * std::log(lt));
      g.liminf_normalized =
          static_cast<double>(g.gap) / (t / std::pow(lt, 3.0 + delta));
    } else {
      g.limsup_normalized = std::numeric_limits<double>::quiet_NaN();
      g.liminf_normalized = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(g);
  }
  return out;
}

std::vector<double> bourgain_ratio(const SelectorProfile& profile,
                                   const std::vector<std::size_t>& n_list) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2)
      throw std::invalid_argument("growth horizons must be at least 2");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("growth horizons must be increasing");
  }
  std::vector<double> out;
  out.reserve(n_list.size());
  KahanSum m;
  std::size_t k = 0;
  for (std::size_t n : n_list) {
    while (k < n) m.add(profile.delta(++k));
    out.push_back(m.value() / std::log(static_cast<double>(n)));
  }
  return out;
}

double relation_bound(unsigned n, double a, const SelectorProfile& profile) {
  if (n < 2) throw std::invalid_argument("relation length must be at least 2");
  if (!(a >= 1.0)) throw std::invalid_argument("cut point must be at least 1");

  const double scale = std::pow(4.0 * std::exp(1.0) / n, static_cast<int>(n));
  const auto first = static_cast<std::uint64_t>(std::floor(a)) + 1;

  if (profile.kind() == SelectorProfile::Kind::constant) {
    if (profile.parameter() == 0.0) return 0.0;
    throw NumericalError("bound infinite for a non-decaying profile");
  }
  if (profile.kind() == SelectorProfile::Kind::custom) {
    KahanSum m, partial;
    for (std::size_t k = 1; k <= profile.table().size(); ++k) {
      const double d = profile.delta(k);
      m.add(d);
      if (k >= first)
        partial.add(d * d * std::pow(m.value(), static_cast<int>(n) - 2));
    }
    return scale * partial.value();
  }

  const bool furst = profile.kind() == SelectorProfile::Kind::furstenberg;
  const double c = profile.parameter();

  // Tail majorant after the integral substitution x = log t, X = log J:
  //   furstenberg: sum_{j>J} delta_j^2 m_j^{n-2}
  //                <= int_X^inf x^2 (x^2/2 + 0.11)^{n-2} e^{-x} dx
  //   reciprocal:  <= c^n int_X^inf (x + 1)^{n-2} e^{-x} dx
  // (m_j <= log^2 j/2 + 0.11 for j >= 3; c H_j <= c(log j + 1).)  Both
  // integrands decrease once log J > n - 1, which the start horizon ensures.
  const auto tail_bound = [&](std::uint64_t j_cap) {
    const double x = std::log(static_cast<double>(j_cap));
    const unsigned p = n - 2;
    if (furst) {
      const auto g = upper_gamma_table(2 * p + 2, x);
      double tail = 0.0;
      for (unsigned i = 0; i <= p; ++i)
        tail += binom(p, i) * std::pow(0.5, static_cast<int>(i)) *
                std::pow(0.11, static_cast<int>(p - i)) * g[2 * i + 2];
      return tail;
    }
    const auto g = upper_gamma_table(p, x);
    double tail = 0.0;
    for (unsigned i = 0; i <= p; ++i) tail += binom(p, i) * g[i];
    return std::pow(c, static_cast<int>(n)) * tail;
  };

  std::uint64_t horizon = std::max<std::uint64_t>(
      first + 1000,
      static_cast<std::uint64_t>(std::ceil(std::exp(static_cast<double>(n) + 1.0))));
  KahanSum m, partial;
  std::uint64_t k = 0;
  for (;;) {
    while (k < horizon) {
      const double d = profile.delta(++k);
      m.add(d);
      if (k >= first)
        partial.add(d * d * std::pow(m.value(), static_cast<int>(n) - 2));
    }
    const double tail = tail_bound(horizon);
    if (tail <= kTailFraction * partial.value())
      return scale * (partial.value() + tail);
    if (horizon > kTailHorizonCap)
      throw NumericalError("tail does not certify below the truncation threshold");
    horizon *= 2;
  }
}

std::vector<BlockAnalysis> kk_block_analysis(const SelectorSample& sample,
                                             unsigned l_max) {
  if (l_max > 40)
    throw std::invalid_argument("scan length exceeds the exact-search cutoff");
  std::vector<BlockAnalysis> out;
  for (unsigned n = 1;; ++n) {
    const double raw = std::ceil(std::exp(static_cast<double>(n)));
    if (raw > static_cast<double>(sample.horizon)) break;
    BlockAnalysis b;
    b.block = n;
    b.threshold = static_cast<std::uint64_t>(raw);
    b.head_count = static_cast<std::size_t>(
        std::upper_bound(sample.members.begin(), sample.members.end(),
                         b.threshold) -
        sample.members.begin());
    b.scan_length = std::min(n, l_max);
    auto lo = std::lower_bound(sample.members.begin(), sample.members.end(),
                               b.threshold);
    std::vector<std::uint64_t> tail(lo, sample.members.end());
    b.tail_size = tail.size();
    if (b.scan_length >= 3 && tail.size() >= 3)
      b.relation = find_relation_bounded(tail, b.scan_length);
    out.push_back(std::move(b));
  }
  return out;
}

BigSubsetReport build_big_subset(const SelectorSample& sample, unsigned n_max) {
  if (n_max > 62) throw std::invalid_argument("dyadic index out of range");
  if (sample.horizon < (std::uint64_t{1} << (n_max + 1)))
    throw std::invalid_argument("horizon must reach past the last dyadic block");

  BigSubsetReport report;
  for (unsigned n = 0; n <= n_max; ++n) {
    std::vector<std::uint64_t> block = dyadic_block(sample.members, n);
    if (block.empty()) continue;
    BlockExtraction e;
    e.block = n;
    e.block_size = block.size();
    e.report = extract_greedy(block);
    report.members.insert(report.members.end(), e.report.subset.begin(),
                          e.report.subset.end());
    report.blocks.push_back(std::move(e));
  }

  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t cap = std::uint64_t{1} << n;
    DensityPoint d;
    d.n = n;
    d.subset_count = static_cast<std::size_t>(
        std::upper_bound(report.members.begin(), report.members.end(), cap) -
        report.members.begin());
    d.sample_count = static_cast<std::size_t>(
        std::upper_bound(sample.members.begin(), sample.members.end(), cap) -
        sample.members.begin());
    d.ratio = d.sample_count == 0
                  ? std::numeric_limits<double>::quiet_NaN()
                  : static_cast<double>(d.subset_count) /
                        static_cast<double>(d.sample_count);
    report.density.push_back(d);
  }
  return report;
}

}  // namespace furst
