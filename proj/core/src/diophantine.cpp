#include "furst/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "furst/errors.hpp"

namespace furst {

namespace {

// Internal signal: the working precision cannot separate the quantities
// involved; callers with an adaptive loop retry at twice the precision.
struct RetryPrecision {};

struct Interval {
  mpfr_t lo, hi;
  explicit Interval(mpfr_prec_t p) {
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
  }
  ~Interval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
};

// Multiplicative dependence scan: a^n = b^m with m/n in lowest terms forces
// a = c^u, b = c^v for some base c >= 2, so n <= log2(b) bits <= 63.
std::optional<mpq_class> multiplicative_dependence(unsigned long a,
                                                   unsigned long b) {
  const double approx = std::log(static_cast<double>(a)) /
                        std::log(static_cast<double>(b));
  for (unsigned n = 1; n <= 63; ++n) {
    const double target = approx * n;
    const long long m = std::llround(target);
    if (m < 1 || std::fabs(target - static_cast<double>(m)) > 0.25) continue;
    mpz_class an, bm;
    mpz_ui_pow_ui(an.get_mpz_t(), a, n);
    mpz_ui_pow_ui(bm.get_mpz_t(), b, static_cast<unsigned long>(m));
    if (an == bm) {
      mpq_class r(static_cast<long>(m), static_cast<long>(n));
      r.canonicalize();
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

CertifiedReal::CertifiedReal(mpfr_prec_t prec) : prec_(prec) {
  // Extra guard bits keep the absolute radius below 2^(-prec+2) even for
  // values well above 1.
  mpfr_init2(lo_, prec + 64);
  mpfr_init2(hi_, prec + 64);
}

CertifiedReal::CertifiedReal(const CertifiedReal& other) : prec_(other.prec_) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  exact_ = other.exact_;
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept
    : prec_(other.prec_), exact_(std::move(other.exact_)) {
  lo_[0] = other.lo_[0];
  hi_[0] = other.hi_[0];
  mpfr_init2(other.lo_, MPFR_PREC_MIN);
  mpfr_init2(other.hi_, MPFR_PREC_MIN);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
  if (this == &other) return *this;
  mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
  mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  prec_ = other.prec_;
  exact_ = other.exact_;
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
  if (this == &other) return *this;
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  prec_ = other.prec_;
  exact_ = std::move(other.exact_);
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::log_ratio(unsigned long a, unsigned long b,
                                       mpfr_prec_t bits) {
  if (a < 2 || b < 2)
    throw std::invalid_argument("log_ratio: arguments must be >= 2");
  if (auto dep = multiplicative_dependence(a, b)) {
    CertifiedReal r = from_rational(*dep, bits);
    return r;
  }
  CertifiedReal r(bits);
  const mpfr_prec_t work = bits + 96;
  Interval la(work), lb(work);
  mpfr_set_ui(la.lo, a, MPFR_RNDD);
  mpfr_log(la.lo, la.lo, MPFR_RNDD);
  mpfr_set_ui(la.hi, a, MPFR_RNDU);
  mpfr_log(la.hi, la.hi, MPFR_RNDU);
  mpfr_set_ui(lb.lo, b, MPFR_RNDD);
  mpfr_log(lb.lo, lb.lo, MPFR_RNDD);
  mpfr_set_ui(lb.hi, b, MPFR_RNDU);
  mpfr_log(lb.hi, lb.hi, MPFR_RNDU);
  mpfr_div(r.lo_, la.lo, lb.hi, MPFR_RNDD);
  mpfr_div(r.hi_, la.hi, lb.lo, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_rational(const mpq_class& value,
                                           mpfr_prec_t bits) {
  CertifiedReal r(bits);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  r.exact_ = value;
  return r;
}

CertifiedReal CertifiedReal::sqrt_fraction(unsigned long n, mpfr_prec_t bits) {
  mpz_class root, nz(n);
  mpz_sqrt(root.get_mpz_t(), nz.get_mpz_t());
  if (root * root == nz) return from_rational(mpq_class(0), bits);
  CertifiedReal r(bits);
  mpfr_sqrt_ui(r.lo_, n, MPFR_RNDD);
  mpfr_sub_z(r.lo_, r.lo_, root.get_mpz_t(), MPFR_RNDD);
  mpfr_sqrt_ui(r.hi_, n, MPFR_RNDU);
  mpfr_sub_z(r.hi_, r.hi_, root.get_mpz_t(), MPFR_RNDU);
  return r;
}

double CertifiedReal::value() const {
  mpfr_t mid;
  mpfr_init2(mid, mpfr_get_prec(lo_));
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  const double v = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return v;
}

double CertifiedReal::error_radius() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(w, w, 1, MPFR_RNDU);
  const double v = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return v;
}

std::optional<mpz_class> CertifiedReal::certified_floor() const {
  mpz_class flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), hi_, MPFR_RNDD);
  if (flo == fhi) return flo;
  return std::nullopt;
}

CertifiedReal::Bounds CertifiedReal::circle_distance(unsigned long q) const {
  if (exact_) {
    mpq_class w = *exact_ * static_cast<long>(q);
    w.canonicalize();
    mpz_class num = w.get_num(), den = w.get_den();
    mpz_class r = num % den;
    if (r < 0) r += den;
    mpq_class frac(r, den);
    frac.canonicalize();
    const double f = frac.get_d();
    const double d = std::min(f, 1.0 - f);
    return {d, d};
  }
  const mpfr_prec_t work = mpfr_get_prec(lo_);
  Interval w(work);
  mpfr_mul_ui(w.lo, lo_, q, MPFR_RNDD);
  mpfr_mul_ui(w.hi, hi_, q, MPFR_RNDU);
  // Distance of the bracket to the nearest integer.
  mpz_class n1, n2;
  mpfr_t tmp;
  mpfr_init2(tmp, work);
  mpfr_round(tmp, w.lo);
  mpfr_get_z(n1.get_mpz_t(), tmp, MPFR_RNDN);
  mpfr_round(tmp, w.hi);
  mpfr_get_z(n2.get_mpz_t(), tmp, MPFR_RNDN);
  double d1, d2;
  {
    mpfr_t a;
    mpfr_init2(a, work);
    mpfr_sub_z(a, w.lo, n1.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(a, a, MPFR_RNDN);
    d1 = mpfr_get_d(a, MPFR_RNDN);
    mpfr_sub_z(a, w.hi, n2.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(a, a, MPFR_RNDN);
    d2 = mpfr_get_d(a, MPFR_RNDN);
    mpfr_clear(a);
  }
  mpfr_clear(tmp);
  if (n1 == n2) {
    // Same nearest integer; does the bracket contain it?
    const int c1 = mpfr_cmp_z(w.lo, n1.get_mpz_t());
    const int c2 = mpfr_cmp_z(w.hi, n1.get_mpz_t());
    if (c1 <= 0 && c2 >= 0) return {0.0, std::max(d1, d2)};
    return {std::min(d1, d2), std::max(d1, d2)};
  }
  // Bracket crosses a half-integer (or integer) boundary.
  return {std::min(d1, d2), 0.5};
}

namespace {

void append_convergents(ContinuedFraction& cf) {
  mpz_class p_prev(1), q_prev(0);  // k = -1
  mpz_class p_cur, q_cur;
  for (std::size_t k = 0; k < cf.quotients.size(); ++k) {
    if (k == 0) {
      p_cur = cf.quotients[0];
      q_cur = 1;
    } else {
      mpz_class p_next = cf.quotients[k] * p_cur + p_prev;
      mpz_class q_next = cf.quotients[k] * q_cur + q_prev;
      p_prev = p_cur;
      q_prev = q_cur;
      p_cur = p_next;
      q_cur = q_next;
    }
    cf.convergents.emplace_back(p_cur, q_cur);
  }
}

ContinuedFraction rational_continued_fraction(const mpq_class& x,
                                              std::size_t depth) {
  ContinuedFraction cf;
  mpz_class num = x.get_num(), den = x.get_den();
  for (std::size_t k = 0; k <= depth; ++k) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.quotients.push_back(a);
    if (r == 0) {
      cf.terminated_rational = true;
      break;
    }
    num = den;
    den = r;
  }
  append_convergents(cf);
  return cf;
}

}  // namespace

ContinuedFraction continued_fraction(const CertifiedReal& x, std::size_t depth) {
  if (x.is_exact_rational()) return rational_continued_fraction(x.rational(), depth);

  ContinuedFraction cf;
  const mpfr_prec_t work = mpfr_get_prec(x.lower());
  Interval cur(work);
  mpfr_set(cur.lo, x.lower(), MPFR_RNDD);
  mpfr_set(cur.hi, x.upper(), MPFR_RNDU);

  for (std::size_t k = 0; k <= depth; ++k) {
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), cur.lo, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), cur.hi, MPFR_RNDD);
    if (flo != fhi) {
      cf.truncated_by_precision = true;
      break;
    }
    cf.quotients.push_back(flo);
    if (k == depth) break;
    // y = x - a0, then continue with 1/y.
    mpfr_sub_z(cur.lo, cur.lo, flo.get_mpz_t(), MPFR_RNDD);
    mpfr_sub_z(cur.hi, cur.hi, flo.get_mpz_t(), MPFR_RNDU);
    if (mpfr_sgn(cur.lo) <= 0) {
      // The fractional part cannot be certified positive.
      cf.truncated_by_precision = true;
      break;
    }
    mpfr_swap(cur.lo, cur.hi);
    mpfr_ui_div(cur.lo, 1, cur.lo, MPFR_RNDD);
    mpfr_ui_div(cur.hi, 1, cur.hi, MPFR_RNDU);
  }
  append_convergents(cf);
  return cf;
}

ContinuedFraction log_ratio_continued_fraction(unsigned long a, unsigned long b,
                                               std::size_t depth) {
  constexpr mpfr_prec_t kCap = 1 << 16;
  ContinuedFraction best;
  for (mpfr_prec_t prec = 256; prec <= kCap; prec *= 2) {
    CertifiedReal x = CertifiedReal::log_ratio(a, b, prec);
    ContinuedFraction cf = continued_fraction(x, depth);
    if (!cf.truncated_by_precision) return cf;
    if (cf.quotients.size() > best.quotients.size()) best = std::move(cf);
  }
  return best;
}

std::vector<PurePair> pure_pairs(const mpz_class& limit) {
  SemigroupBasis basis({2, 3});
  auto terms = enumerate_upto(basis, limit, /*include_unit=*/false);
  std::vector<PurePair> out;
  auto pure_index = [](const SmoothNumber& t) -> int {
    int idx = -1;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (idx >= 0) return -1;  // mixed term
      idx = static_cast<int>(i);
    }
    return idx;
  };
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    const int a = pure_index(terms[i]);
    const int b = pure_index(terms[i + 1]);
    if (a < 0 || b < 0 || a == b) continue;
    PurePair p;
    p.first = terms[i].value;
    p.second = terms[i + 1].value;
    const SmoothNumber& three = (a == 1) ? terms[i] : terms[i + 1];
    const SmoothNumber& two = (a == 0) ? terms[i] : terms[i + 1];
    p.three_exponent = three.exponents[1];
    p.two_exponent = two.exponents[0];
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// floor(n * log3/log2) with a certified bracket; the ratio interval is
// computed once at `prec` bits.
std::vector<int> sturmian_code_at(std::size_t n_max, mpfr_prec_t prec) {
  CertifiedReal ratio = CertifiedReal::log_ratio(3, 2, prec);
  const mpfr_prec_t work = mpfr_get_prec(ratio.lower());
  Interval w(work);
  std::vector<int> out;
  out.reserve(n_max);
  mpz_class prev(0), flo, fhi;
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpfr_mul_ui(w.lo, ratio.lower(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_mul_ui(w.hi, ratio.upper(), static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_get_z(flo.get_mpz_t(), w.lo, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), w.hi, MPFR_RNDD);
    if (flo != fhi) throw RetryPrecision{};
    out.push_back(static_cast<int>(mpz_class(flo - prev).get_si()));
    prev = flo;
  }
  return out;
}

std::vector<int> merged_rotation_word_at(std::size_t n_max, mpfr_prec_t prec) {
  // beta = 1 / (1 + log2/log3); emit 1 iff frac(n*beta) > 1 - beta.
  CertifiedReal alpha = CertifiedReal::log_ratio(2, 3, prec);
  const mpfr_prec_t work = mpfr_get_prec(alpha.lower());
  Interval beta(work), thresh(work), w(work), f(work);
  mpfr_add_ui(beta.lo, alpha.upper(), 1, MPFR_RNDU);
  mpfr_ui_div(beta.lo, 1, beta.lo, MPFR_RNDD);
  mpfr_add_ui(beta.hi, alpha.lower(), 1, MPFR_RNDD);
  mpfr_ui_div(beta.hi, 1, beta.hi, MPFR_RNDU);
  mpfr_ui_sub(thresh.lo, 1, beta.hi, MPFR_RNDD);
  mpfr_ui_sub(thresh.hi, 1, beta.lo, MPFR_RNDU);

  std::vector<int> out;
  out.reserve(n_max);
  mpz_class flo, fhi;
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpfr_mul_ui(w.lo, beta.lo, static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_mul_ui(w.hi, beta.hi, static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_get_z(flo.get_mpz_t(), w.lo, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), w.hi, MPFR_RNDD);
    if (flo != fhi) throw RetryPrecision{};
    mpfr_sub_z(f.lo, w.lo, flo.get_mpz_t(), MPFR_RNDD);
    mpfr_sub_z(f.hi, w.hi, flo.get_mpz_t(), MPFR_RNDU);
    if (mpfr_cmp(f.lo, thresh.hi) > 0) {
      out.push_back(1);
    } else if (mpfr_cmp(f.hi, thresh.lo) < 0) {
      out.push_back(0);
    } else {
      throw RetryPrecision{};
    }
  }
  return out;
}

template <typename F>
auto adaptive(F f, const char* what) {
  for (mpfr_prec_t prec = 256; prec <= (1 << 14); prec *= 2) {
    try {
      return f(prec);
    } catch (const RetryPrecision&) {
      continue;
    }
  }
  throw NumericalError(std::string(what) + ": precision cap exhausted");
}

}  // namespace

std::vector<int> sturmian_code(std::size_t n_max) {
  if (n_max == 0) return {};
  return adaptive([&](mpfr_prec_t p) { return sturmian_code_at(n_max, p); },
                  "sturmian_code");
}

std::vector<int> merged_power_word(std::size_t n_max) {
  // Certified comparison of 2^j vs 3^k through j*log2 <=> k*log3, walking
  // both exponents upward.
  return adaptive(
      [&](mpfr_prec_t prec) {
        CertifiedReal ratio = CertifiedReal::log_ratio(3, 2, prec);
        const mpfr_prec_t work = mpfr_get_prec(ratio.lower());
        Interval w(work);
        std::vector<int> out;
        out.reserve(n_max);
        unsigned long j = 1, k = 1;
        while (out.size() < n_max) {
          // 2^j < 3^k  <=>  j < k * log3/log2.
          mpfr_mul_ui(w.lo, ratio.lower(), k, MPFR_RNDD);
          mpfr_mul_ui(w.hi, ratio.upper(), k, MPFR_RNDU);
          if (mpfr_cmp_ui(w.lo, j) > 0) {
            out.push_back(1);
            ++j;
          } else if (mpfr_cmp_ui(w.hi, j) < 0) {
            out.push_back(0);
            ++k;
          } else {
            throw RetryPrecision{};
          }
        }
        return out;
      },
      "merged_power_word");
}

std::vector<int> merged_rotation_word(std::size_t n_max) {
  if (n_max == 0) return {};
  return adaptive(
      [&](mpfr_prec_t p) { return merged_rotation_word_at(n_max, p); },
      "merged_rotation_word");
}

IrrationalityProfile irrationality_profile(const CertifiedReal& x,
                                           unsigned long q_max, double rho) {
  if (q_max == 0)
    throw std::invalid_argument("irrationality_profile: q_max >= 1 required");
  IrrationalityProfile prof;
  prof.min_value = std::numeric_limits<double>::infinity();
  prof.argmin_q = 0;
  prof.certified = true;
  for (unsigned long q = 1; q <= q_max; ++q) {
    const auto b = x.circle_distance(q);
    const double scale = std::pow(static_cast<double>(q), rho);
    const double mid = 0.5 * (b.lo + b.hi) * scale;
    const double width = (b.hi - b.lo) * scale;
    if (width > std::max(1e-9 * std::max(mid, 0.0), 1e-12)) prof.certified = false;
    if (mid < prof.min_value) {
      prof.min_value = mid;
      prof.argmin_q = q;
    }
  }
  return prof;
}

bool semigroup_contains(const SemigroupBasis& basis, const mpz_class& m) {
  if (m < 1) return false;
  mpz_class r = m;
  for (unsigned long g : basis.generators()) {
    while (mpz_divisible_ui_p(r.get_mpz_t(), g)) r /= g;
  }
  return r == 1;
}

BohrCertificate bohr_certificate(const mpz_class& m, const SemigroupBasis& basis) {
  if (m < 0)
    throw std::invalid_argument("bohr_certificate: m must be non-negative");
  if (!basis.all_prime())
    throw std::invalid_argument(
        "bohr_certificate: construction requires prime generators");
  if (semigroup_contains(basis, m))
    throw std::invalid_argument("bohr_certificate: m is in the semigroup");

  BohrCertificate cert;
  cert.target = m;
  cert.semigroup_exponents.assign(basis.size(), 0);

  if (m == 0) {
    // Any modulus with a prime factor exceeding every generator works; no
    // semigroup element is divisible by it.
    mpz_class p(basis.generators().back());
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    cert.residual = 0;
    cert.semigroup_factor = 1;
    cert.modulus = p;
    return cert;
  }

  // Split m into its semigroup part and a residual coprime to every
  // generator; the residual cannot be 1 since m is outside the semigroup.
  mpz_class residual = m, part(1);
  const auto& gens = basis.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    while (mpz_divisible_ui_p(residual.get_mpz_t(), gens[i])) {
      residual /= gens[i];
      part *= gens[i];
      ++cert.semigroup_exponents[i];
    }
  }
  cert.residual = residual;

  // Smallest s = prod q_j^{beta_j} with every beta_j >= 1, s > residual - 1
  // and residual mod s != 1.  Scanning semigroup elements in increasing
  // order keeps the modulus (and the verification scan) minimal.
  mpz_class s0(1);
  for (unsigned long g : gens) s0 *= g;
  for (std::size_t chunk = 64;; chunk *= 4) {
    auto inner = enumerate_first(basis, chunk, /*include_unit=*/true);
    for (const auto& t : inner) {
      mpz_class s = s0 * t.value;
      if (s > residual - 1 && residual % s != 1) {
        cert.semigroup_factor = s;
        cert.modulus = s * part;
        return cert;
      }
    }
    if (chunk > (1u << 20))
      throw NumericalError("bohr_certificate: no certificate found");
  }
}

bool verify_certificate(const BohrCertificate& cert, const SemigroupBasis& basis,
                        const mpz_class& limit) {
  if (cert.modulus < 2) return false;
  const mpz_class want = ((cert.target % cert.modulus) + cert.modulus) % cert.modulus;
  auto terms = enumerate_upto(basis, limit, /*include_unit=*/true);
  for (const auto& t : terms) {
    if (t.value % cert.modulus == want) return false;
  }
  return true;
}

}  // namespace furst
