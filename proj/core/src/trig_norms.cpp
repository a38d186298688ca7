#include "furst/trig_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "furst/errors.hpp"
#include "furst/rng.hpp"

namespace furst {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t next_pow2(std::size_t need) {
  std::size_t g = 1;
  while (g < need) g <<= 1;
  return g;
}

struct TrigTable {
  std::vector<double> cos_v, sin_v;
  explicit TrigTable(std::size_t g) : cos_v(g), sin_v(g) {
    for (std::size_t j = 0; j < g; ++j) {
      const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(g);
      cos_v[j] = std::cos(x);
      sin_v[j] = std::sin(x);
    }
  }
};

// |sum_k a_k e(k g / G)| for g = 0..G-1 with exact index arithmetic.
std::vector<double> moduli_impl(
    const std::vector<std::pair<long long, std::complex<double>>>& terms,
    std::size_t grid) {
  const TrigTable table(grid);
  std::vector<double> re(grid, 0.0), im(grid, 0.0);
  const auto g = static_cast<long long>(grid);
  for (const auto& [freq, coef] : terms) {
    const auto step = static_cast<std::size_t>(((freq % g) + g) % g);
    const double ar = coef.real(), ai = coef.imag();
    std::size_t idx = 0;
    for (std::size_t p = 0; p < grid; ++p) {
      re[p] += ar * table.cos_v[idx] - ai * table.sin_v[idx];
      im[p] += ar * table.sin_v[idx] + ai * table.cos_v[idx];
      idx += step;
      if (idx >= grid) idx -= grid;
    }
  }
  std::vector<double> out(grid);
  for (std::size_t p = 0; p < grid; ++p) out[p] = std::hypot(re[p], im[p]);
  return out;
}

double grid_q_mean_root(const std::vector<double>& moduli, double q) {
  KahanSum sum;
  for (double m : moduli) sum.add(std::pow(m, q));
  const double mean = sum.value() / static_cast<double>(moduli.size());
  return mean <= 0.0 ? 0.0 : std::pow(mean, 1.0 / q);
}

using CoefMap = std::map<long long, std::complex<double>>;

CoefMap convolve(const CoefMap& a, const CoefMap& b) {
  CoefMap out;
  for (const auto& [fa, ca] : a)
    for (const auto& [fb, cb] : b) out[fa + fb] += ca * cb;
  return out;
}

std::size_t auto_grid(long long degree, double q_cap) {
  const auto d = static_cast<std::size_t>(degree);
  const auto band = static_cast<std::size_t>(std::ceil(q_cap)) * d;
  return next_pow2(std::max({4 * d, band, std::size_t{15}}) + 1);
}

double orlicz_lambda(const std::vector<double>& moduli, double lo, double hi) {
  const auto mean_psi = [&](double lambda) {
    KahanSum sum;
    for (double m : moduli) {
      const double r = m / lambda;
      sum.add(std::expm1(r * r));
    }
    return sum.value() / static_cast<double>(moduli.size());
  };
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mean_psi(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::map<long long, std::complex<double>> terms)
    : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == std::complex<double>(0.0, 0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
}

TrigPolynomial TrigPolynomial::characters(
    const std::vector<std::uint64_t>& freqs) {
  TrigPolynomial f;
  for (std::uint64_t k : freqs)
    f.terms_[static_cast<long long>(k)] += std::complex<double>(1.0, 0.0);
  return f;
}

void TrigPolynomial::set(long long frequency, std::complex<double> coefficient) {
  if (coefficient == std::complex<double>(0.0, 0.0))
    terms_.erase(frequency);
  else
    terms_[frequency] = coefficient;
}

long long TrigPolynomial::degree() const {
  long long d = 0;
  for (const auto& [freq, coef] : terms_) d = std::max(d, std::abs(freq));
  return d;
}

double TrigPolynomial::l2_norm() const {
  KahanSum sum;
  for (const auto& [freq, coef] : terms_) sum.add(std::norm(coef));
  return std::sqrt(sum.value());
}

double TrigPolynomial::coefficient_norm(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("coefficient exponent must be positive");
  KahanSum sum;
  for (const auto& [freq, coef] : terms_) sum.add(std::pow(std::abs(coef), p));
  return std::pow(sum.value(), 1.0 / p);
}

std::vector<double> TrigPolynomial::grid_moduli(std::size_t grid_size) const {
  if (grid_size == 0) throw std::invalid_argument("grid must be non-empty");
  std::vector<std::pair<long long, std::complex<double>>> flat(terms_.begin(),
                                                               terms_.end());
  return moduli_impl(flat, grid_size);
}

const char* norm_kind_name(NormEstimate::Kind kind) {
  switch (kind) {
    case NormEstimate::Kind::lq_exact:
      return "lq-exact";
    case NormEstimate::Kind::lq_grid:
      return "lq-grid";
    case NormEstimate::Kind::psi2_orlicz:
      return "psi2-orlicz";
    case NormEstimate::Kind::psi2_supq:
      return "psi2-supq";
    default:
      return "rider";
  }
}

NormEstimate lq_norm(const TrigPolynomial& f, double q, LqMode mode,
                     std::size_t grid_size) {
  NormEstimate est;
  if (mode == LqMode::exact) {
    const auto qi = static_cast<long long>(std::llround(q));
    if (static_cast<double>(qi) != q || qi < 2 || qi > 8 || qi % 2 != 0)
      throw std::invalid_argument("exact mode needs an even integer q between 2 and 8");
    est.kind = NormEstimate::Kind::lq_exact;
    if (f.size() == 0) return est;
    CoefMap base;  // |f|^2 = f * conj(f)
    for (const auto& [fa, ca] : f.terms())
      for (const auto& [fb, cb] : f.terms())
        base[fa - fb] += ca * std::conj(cb);
    CoefMap power = base;
    for (long long i = 1; i < qi / 2; ++i) power = convolve(power, base);
    const double raw = power.count(0) ? power.at(0).real() : 0.0;
    est.value = raw <= 0.0 ? 0.0 : std::pow(raw, 1.0 / static_cast<double>(qi));
    return est;
  }

  if (!(q >= 1.0)) throw std::invalid_argument("grid mode needs q >= 1");
  est.kind = NormEstimate::Kind::lq_grid;
  const auto d = static_cast<std::size_t>(f.degree());
  std::size_t grid = grid_size == 0 ? auto_grid(f.degree(), q) : grid_size;
  if (grid_size != 0 && grid_size < 4 * d + 1)
    throw std::invalid_argument("grid below the Nyquist bound");
  const double coarse = grid_q_mean_root(f.grid_moduli(grid), q);
  const double fine = grid_q_mean_root(f.grid_moduli(2 * grid), q);
  est.grid_size = 2 * grid;
  est.value = fine;
  est.refinement_delta = std::abs(fine - coarse);
  return est;
}

NormEstimate psi2_norm(const TrigPolynomial& f, Psi2Method method) {
  if (f.size() == 0 || f.l2_norm() == 0.0)
    throw std::invalid_argument("zero polynomial has no subgaussian norm");
  NormEstimate est;
  if (method == Psi2Method::orlicz) {
    est.kind = NormEstimate::Kind::psi2_orlicz;
    const std::size_t grid = auto_grid(f.degree(), 8.0);
    const auto solve = [&](std::size_t g) {
      const auto moduli = f.grid_moduli(g);
      const double hi = *std::max_element(moduli.begin(), moduli.end());
      return orlicz_lambda(moduli, f.l2_norm() / 10.0, 10.0 * hi);
    };
    const double coarse = solve(grid);
    const double fine = solve(2 * grid);
    est.grid_size = 2 * grid;
    est.value = fine;
    est.refinement_delta = std::abs(fine - coarse);
    return est;
  }

  est.kind = NormEstimate::Kind::psi2_supq;
  const auto q_max = static_cast<unsigned>(
      2 * std::ceil(std::log2(1.0 + static_cast<double>(f.size()))) + 8);
  const std::size_t grid = auto_grid(f.degree(), static_cast<double>(q_max));
  const auto sweep = [&](std::size_t g) {
    const auto moduli = f.grid_moduli(g);
    double best = 0.0;
    for (unsigned q = 2; q <= q_max; q += 2)
      best = std::max(best, grid_q_mean_root(moduli, static_cast<double>(q)) /
                                std::sqrt(static_cast<double>(q)));
    return best;
  };
  for (unsigned q = 2; q <= q_max; q += 2)
    est.q_list.push_back(static_cast<double>(q));
  const double coarse = sweep(grid);
  const double fine = sweep(2 * grid);
  est.grid_size = 2 * grid;
  est.value = fine;
  est.refinement_delta = std::abs(fine - coarse);
  return est;
}

NormEstimate psi_block_ratio(const SelectorSample& sample, unsigned n) {
  const auto block = dyadic_block(sample.members, n);
  if (block.empty()) throw std::invalid_argument("empty dyadic block");
  NormEstimate est = psi2_norm(TrigPolynomial::characters(block), Psi2Method::supq);
  const double root = std::sqrt(static_cast<double>(block.size()));
  est.value /= root;
  est.refinement_delta /= root;
  return est;
}

double lambda_q_estimate(const std::vector<std::uint64_t>& set, double q,
                         std::size_t trials, std::uint64_t seed) {
  if (!(q >= 2.0) || q > 16.0)
    throw std::invalid_argument("exponent must lie in [2, 16]");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (set.empty()) throw std::invalid_argument("empty support");
  std::vector<std::uint64_t> freqs(set.begin(),
                                   set.begin() + std::min<std::size_t>(set.size(), 64));
  long long degree = 0;
  for (std::uint64_t k : freqs)
    degree = std::max(degree, static_cast<long long>(k));
  const std::size_t grid = auto_grid(degree, q);
  const double root_half = std::sqrt(0.5);

  double best = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    std::vector<std::pair<long long, std::complex<double>>> terms;
    terms.reserve(freqs.size());
    KahanSum energy;
    for (std::uint64_t k : freqs) {
      const std::complex<double> a(rng.next_gaussian() * root_half,
                                   rng.next_gaussian() * root_half);
      energy.add(std::norm(a));
      terms.emplace_back(static_cast<long long>(k), a);
    }
    if (energy.value() == 0.0) continue;
    const double lq = grid_q_mean_root(moduli_impl(terms, grid), q);
    best = std::max(best, lq / std::sqrt(energy.value()));
  }
  return best;
}

NormEstimate rider_functional(const TrigPolynomial& f, std::size_t trials,
                              std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  NormEstimate est;
  est.kind = NormEstimate::Kind::rider;
  if (f.size() == 0) return est;

  const auto d = static_cast<std::size_t>(f.degree());
  const std::size_t grid = next_pow2(std::max(8 * d, std::size_t{63}) + 1);
  const std::vector<std::pair<long long, std::complex<double>>> flat(
      f.terms().begin(), f.terms().end());

  const auto run = [&](std::size_t g, double* out_se) {
    KahanSum mean_sum, square_sum;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(mix_seed(seed, t));
      auto flipped = flat;
      for (auto& [freq, coef] : flipped)
        if (rng.next_bit()) coef = -coef;
      const auto moduli = moduli_impl(flipped, g);
      const double sup = *std::max_element(moduli.begin(), moduli.end());
      mean_sum.add(sup);
      square_sum.add(sup * sup);
    }
    const double n = static_cast<double>(trials);
    const double mean = mean_sum.value() / n;
    if (out_se) {
      const double var = std::max(0.0, square_sum.value() / n - mean * mean);
      *out_se = trials > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
    return mean;
  };

  const double coarse = run(grid, nullptr);
  double se = 0.0;
  const double fine = run(2 * grid, &se);
  est.grid_size = 2 * grid;
  est.value = fine;
  est.refinement_delta = std::abs(fine - coarse);
  est.standard_error = se;
  return est;
}

}  // namespace furst
