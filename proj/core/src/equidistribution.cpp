#include "furst/equidistribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "furst/errors.hpp"
#include "furst/rng.hpp"

namespace furst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

mpq_class fractional_part(const mpq_class& v) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  mpq_class out = v - mpq_class(fl);
  out.canonicalize();
  return out;
}

}  // namespace

CirclePoint CirclePoint::rational(const mpq_class& v) {
  CirclePoint p;
  p.rat_ = fractional_part(v);
  return p;
}

CirclePoint CirclePoint::from_real(const CertifiedReal& x) {
  if (x.is_exact_rational()) return rational(x.rational());
  CirclePoint p;
  p.real_ = x;
  return p;
}

CirclePoint CirclePoint::zero() { return rational(mpq_class(0)); }

mpq_class CirclePoint::exact_phase(const mpz_class& m) const {
  if (!rat_) throw std::logic_error("exact_phase requires a rational point");
  mpq_class w = *rat_ * mpq_class(m);
  w.canonicalize();
  return fractional_part(w);
}

double CirclePoint::reduced_phase(const mpz_class& m) const {
  if (rat_) return exact_phase(m).get_d();
  // Extended-precision product m * x reduced mod 1; the working precision
  // absorbs the magnitude of m so the fractional part keeps full accuracy.
  const mpfr_prec_t base = mpfr_get_prec(real_->lower());
  const mpfr_prec_t work =
      base + static_cast<mpfr_prec_t>(mpz_sizeinbase(m.get_mpz_t(), 2)) + 8;
  mpfr_t w;
  mpfr_init2(w, work);
  mpfr_mul_z(w, real_->lower(), m.get_mpz_t(), MPFR_RNDN);
  mpfr_frac(w, w, MPFR_RNDN);
  if (mpfr_sgn(w) < 0) mpfr_add_ui(w, w, 1, MPFR_RNDN);
  double f = mpfr_get_d(w, MPFR_RNDN);
  mpfr_clear(w);
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

WeylAverage weyl_sum(const std::vector<mpz_class>& freqs, const CirclePoint& x,
                     long long h) {
  if (freqs.empty()) throw std::invalid_argument("weyl_sum: empty frequency list");
  if (h == 0) throw std::invalid_argument("weyl_sum: h must be nonzero");
  KahanSum re, im;
  for (const mpz_class& f : freqs) {
    mpz_class m = f * static_cast<long>(h);
    const double phase = x.reduced_phase(m);
    re.add(std::cos(kTwoPi * phase));
    im.add(std::sin(kTwoPi * phase));
  }
  const double n = static_cast<double>(freqs.size());
  WeylAverage out;
  out.count = freqs.size();
  out.multiplier = h;
  out.value = {re.value() / n, im.value() / n};
  return out;
}

std::vector<double> orbit_points(const std::vector<mpz_class>& freqs,
                                 const CirclePoint& x) {
  std::vector<double> out;
  out.reserve(freqs.size());
  for (const mpz_class& f : freqs) out.push_back(x.reduced_phase(f));
  return out;
}

double star_discrepancy(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty input");
  for (double p : points) {
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("star_discrepancy: point outside [0,1)");
  }
  std::sort(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double up = static_cast<double>(i + 1) / n - points[i];
    const double down = points[i] - static_cast<double>(i) / n;
    d = std::max({d, up, down});
  }
  return d;
}

namespace {

// Van der Corput radical inverse of i >= 1 as an exact dyadic rational:
// the bit-reversal of i within its bit length L over 2^L.  The numerator is
// always odd because the leading 1-bit of i becomes the units bit.
mpq_class van_der_corput(unsigned long i) {
  unsigned long rev = 0;
  unsigned long len = 0;
  for (unsigned long v = i; v != 0; v >>= 1) ++len;
  for (unsigned long b = 0; b < len; ++b) {
    rev = (rev << 1) | ((i >> b) & 1UL);
  }
  mpq_class out(rev, mpz_class(1) << len);
  out.canonicalize();
  return out;
}

double average_magnitude_at(const std::vector<mpz_class>& freqs,
                            const mpq_class& point) {
  CirclePoint x = CirclePoint::rational(point);
  KahanSum re, im;
  for (const mpz_class& f : freqs) {
    const double phase = x.reduced_phase(f);
    re.add(std::cos(kTwoPi * phase));
    im.add(std::sin(kTwoPi * phase));
  }
  const double n = static_cast<double>(freqs.size());
  return std::hypot(re.value() / n, im.value() / n);
}

}  // namespace

HartmanReport hartman_profile(const std::vector<mpz_class>& freqs,
                              unsigned long denominator_bound,
                              std::size_t grid_size) {
  if (freqs.empty())
    throw std::invalid_argument("hartman_profile: empty frequency list");
  if (grid_size < 4) throw std::invalid_argument("hartman_profile: grid too small");
  if (denominator_bound < 1)
    throw std::invalid_argument("hartman_profile: denominator bound must be >= 1");

  HartmanReport report;
  report.grid_size = grid_size;

  // Exact audit of every reduced rational with denominator <= bound,
  // including x = 0 as 0/1.
  for (unsigned long q = 1; q <= denominator_bound; ++q) {
    for (unsigned long a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      mpq_class point(a, q);
      point.canonicalize();
      report.excluded.push_back({point, average_magnitude_at(freqs, point)});
    }
  }

  // Offset grid x_g = (g + vdc(g+1)) / grid_size.  The van der Corput offset
  // makes the reduced denominator at least 2 * grid_size, which is checked
  // exactly; any violation is audited with the rationals instead.
  for (std::size_t g = 0; g < grid_size; ++g) {
    mpq_class point =
        (mpq_class(static_cast<unsigned long>(g)) + van_der_corput(g + 1)) /
        static_cast<unsigned long>(grid_size);
    point.canonicalize();
    const double mag = average_magnitude_at(freqs, point);
    if (point.get_den() <= denominator_bound) {
      report.excluded.push_back({point, mag});
      continue;
    }
    ++report.grid_points_used;
    report.grid_sup = std::max(report.grid_sup, mag);
  }
  return report;
}

std::vector<DelSeriesTerm> del_series(const std::vector<mpz_class>& freqs,
                                      std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("del_series: n_max >= 1 required");
  if (freqs.size() < n_max)
    throw std::invalid_argument("del_series: need at least n_max frequencies");

  // Exact route: ∫ |A_n|^2 = (1/n^2) #{(j,k) <= n : freq_j = freq_k}.
  // The pair count is maintained incrementally via value multiplicities.
  std::vector<DelSeriesTerm> out;
  out.reserve(n_max);
  std::map<mpz_class, unsigned long> multiplicity;
  mpz_class pair_count(0);

  // Quadrature route: grid large enough that |A_n|^2 (degree <= 2*maxfreq)
  // integrates exactly; partial sums of A_n kept per grid point.
  mpz_class max_abs(0);
  for (std::size_t k = 0; k < n_max; ++k) {
    mpz_class a = abs(freqs[k]);
    if (a > max_abs) max_abs = a;
  }
  if (2 * max_abs + 1 > mpz_class(1 << 26))
    throw NumericalError("del_series: frequencies too large for exact quadrature");
  std::size_t grid = 64;
  while (mpz_class(static_cast<unsigned long>(grid)) <= 2 * max_abs) grid *= 2;

  std::vector<double> cos_table(grid), sin_table(grid);
  for (std::size_t r = 0; r < grid; ++r) {
    cos_table[r] = std::cos(kTwoPi * static_cast<double>(r) / static_cast<double>(grid));
    sin_table[r] = std::sin(kTwoPi * static_cast<double>(r) / static_cast<double>(grid));
  }
  std::vector<double> acc_re(grid, 0.0), acc_im(grid, 0.0);

  mpq_class partial_exact(0);
  KahanSum partial_quad;
  const mpz_class grid_z(static_cast<unsigned long>(grid));

  for (std::size_t n = 1; n <= n_max; ++n) {
    const mpz_class& f = freqs[n - 1];
    unsigned long& mult = multiplicity[f];
    pair_count += 2 * mult + 1;  // new diagonal pair plus both orders
    ++mult;

    mpz_class r = f % grid_z;
    if (r < 0) r += grid_z;
    const unsigned long r0 = r.get_ui();
    for (std::size_t g = 0; g < grid; ++g) {
      const std::size_t idx = (r0 * g) % grid;
      acc_re[g] += cos_table[idx];
      acc_im[g] += sin_table[idx];
    }

    DelSeriesTerm term;
    term.n = n;
    term.integral_exact = mpq_class(pair_count, mpz_class(n) * mpz_class(n));
    term.integral_exact.canonicalize();

    KahanSum quad;
    const double dn = static_cast<double>(n);
    for (std::size_t g = 0; g < grid; ++g) {
      const double re = acc_re[g] / dn, im = acc_im[g] / dn;
      quad.add(re * re + im * im);
    }
    term.integral_quadrature = quad.value() / static_cast<double>(grid);

    partial_exact += term.integral_exact / static_cast<unsigned long>(n);
    partial_exact.canonicalize();
    partial_quad.add(term.integral_quadrature / dn);
    term.partial_sum_exact = partial_exact;
    term.partial_sum_quadrature = partial_quad.value();
    out.push_back(std::move(term));
  }
  return out;
}

LambdaSpec LambdaSpec::log_log() { return LambdaSpec{}; }

LambdaSpec LambdaSpec::constant(unsigned value) {
  if (value < 1) throw std::invalid_argument("LambdaSpec: values must be positive");
  LambdaSpec s;
  s.kind_ = Kind::constant;
  s.constant_ = value;
  return s;
}

LambdaSpec LambdaSpec::table(std::vector<unsigned> values) {
  if (values.empty()) throw std::invalid_argument("LambdaSpec: empty table");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1)
      throw std::invalid_argument("LambdaSpec: values must be positive");
    if (i > 0 && values[i] < values[i - 1])
      throw std::invalid_argument("LambdaSpec: values must be non-decreasing");
  }
  LambdaSpec s;
  s.kind_ = Kind::table;
  s.table_ = std::move(values);
  return s;
}

unsigned LambdaSpec::operator()(std::size_t n) const {
  if (n < 1) throw std::invalid_argument("LambdaSpec: index is 1-based");
  switch (kind_) {
    case Kind::constant:
      return constant_;
    case Kind::table:
      if (n > table_.size())
        throw std::invalid_argument("LambdaSpec: index beyond table");
      return table_[n - 1];
    case Kind::log_log:
    default: {
      if (n == 1) return 1;
      const double v = std::log(static_cast<double>(n) *
                                std::log(static_cast<double>(n))) /
                       std::log(2.0);
      const long f = static_cast<long>(std::floor(v));
      return f < 1 ? 1u : static_cast<unsigned>(f);
    }
  }
}

std::size_t LambdaSpec::table_limit() const {
  return kind_ == Kind::table ? table_.size() : 0;
}

const char* LambdaSpec::name() const {
  switch (kind_) {
    case Kind::constant:
      return "constant";
    case Kind::table:
      return "table";
    default:
      return "log-log";
  }
}

ShrinkingTargetPath shrinking_target_sim(const LambdaSpec& lambda,
                                         std::size_t n_max, std::uint64_t seed,
                                         bool force_zero) {
  if (n_max < 1)
    throw std::invalid_argument("shrinking_target_sim: horizon >= 1 required");
  if (lambda.table_limit() != 0 && lambda.table_limit() < 2 * n_max)
    throw std::invalid_argument("shrinking_target_sim: table shorter than 2*horizon");
  const std::size_t bit_count = 2 * n_max + lambda(2 * n_max) + 1;

  // bits[i], i >= 1; index 0 unused so indices match the x_i of the model.
  std::vector<unsigned char> bits(bit_count + 2, 0);
  if (!force_zero) {
    Rng rng(mix_seed(seed, 0));
    for (std::size_t i = 1; i <= bit_count; ++i) bits[i] = rng.next_bit();
  }

  // run[i] = length of the zero run starting at i (truncated at the horizon,
  // which is long enough for every window test below).
  std::vector<std::uint32_t> run(bit_count + 2, 0);
  for (std::size_t i = bit_count; i >= 1; --i) {
    run[i] = bits[i] ? 0 : run[i + 1] + 1;
  }

  std::vector<unsigned> lam(2 * n_max + 1, 0);
  for (std::size_t n = 1; n <= 2 * n_max; ++n) lam[n] = lambda(n);

  ShrinkingTargetPath path;
  path.seed = seed;
  path.horizon = n_max;
  path.forced_zero = force_zero;
  path.window_averages.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (run[n + 1] >= lam[n]) path.hits.push_back(n);
    KahanSum w;
    for (std::size_t k = 1; k <= 2 * n - 1; ++k) {
      // term k of the window at N = n tests bits 2n-k+1 .. 2n-k+λ_k
      if (run[2 * n - k + 1] >= lam[k]) w.add(static_cast<double>(k));
    }
    path.window_averages.push_back(w.value() / (2.0 * static_cast<double>(n)));
  }
  return path;
}

std::vector<HitFrequency> ensemble_hit_frequency(
    const LambdaSpec& lambda, const std::vector<std::size_t>& n_list,
    std::size_t paths, std::uint64_t seed) {
  if (paths < 1) throw std::invalid_argument("ensemble_hit_frequency: paths >= 1");
  if (n_list.empty())
    throw std::invalid_argument("ensemble_hit_frequency: empty index list");
  std::size_t n_top = 0;
  for (std::size_t n : n_list) {
    if (n < 1) throw std::invalid_argument("ensemble_hit_frequency: indices >= 1");
    n_top = std::max(n_top, n);
  }
  if (lambda.table_limit() != 0 && lambda.table_limit() < n_top)
    throw std::invalid_argument("ensemble_hit_frequency: table too short");

  const std::size_t bit_count = n_top + lambda(n_top) + 1;
  std::vector<unsigned> lam(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) lam[i] = lambda(n_list[i]);

  std::vector<std::size_t> hit_counts(n_list.size(), 0);
  std::vector<unsigned char> bits(bit_count + 2, 0);
  for (std::size_t p = 0; p < paths; ++p) {
    Rng rng(mix_seed(seed, p));
    for (std::size_t i = 1; i <= bit_count; ++i) bits[i] = rng.next_bit();
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const std::size_t start = n_list[i] + 1;
      bool hit = true;
      for (unsigned j = 0; j < lam[i]; ++j) {
        if (bits[start + j]) {
          hit = false;
          break;
        }
      }
      if (hit) ++hit_counts[i];
    }
  }

  std::vector<HitFrequency> out(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    out[i].n = n_list[i];
    out[i].empirical =
        static_cast<double>(hit_counts[i]) / static_cast<double>(paths);
    out[i].exact = std::ldexp(1.0, -static_cast<int>(lam[i]));
    out[i].sigma = std::sqrt(out[i].exact * (1.0 - out[i].exact) /
                             static_cast<double>(paths));
  }
  return out;
}

}  // namespace furst
