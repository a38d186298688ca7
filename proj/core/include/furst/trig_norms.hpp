#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "furst/selectors.hpp"

namespace furst {

// Finite trigonometric polynomial f(x) = sum_k a_k e^{2 pi i k x} on the
// circle [0,1).
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  // Zero coefficients are dropped.
  explicit TrigPolynomial(std::map<long long, std::complex<double>> terms);
  // Unit coefficients on the given frequencies; repeats accumulate.
  static TrigPolynomial characters(const std::vector<std::uint64_t>& freqs);

  void set(long long frequency, std::complex<double> coefficient);
  const std::map<long long, std::complex<double>>& terms() const {
    return terms_;
  }
  std::size_t size() const { return terms_.size(); }
  long long degree() const;  // max |frequency|; 0 for the zero polynomial
  double l2_norm() const;    // Parseval: sqrt(sum |a_k|^2)
  // (sum |a_k|^p)^{1/p} over the coefficients.
  double coefficient_norm(double p) const;
  // |f| sampled at x_g = g/G; phases reduced frequency*g mod G exactly so
  // large frequencies never alias through the float path.
  std::vector<double> grid_moduli(std::size_t grid_size) const;

 private:
  std::map<long long, std::complex<double>> terms_;
};

struct NormEstimate {
  enum class Kind { lq_exact, lq_grid, psi2_orlicz, psi2_supq, rider };
  Kind kind = Kind::lq_exact;
  double value = 0.0;
  std::size_t grid_size = 0;      // 0 when no grid is involved
  std::vector<double> q_list;     // the q grid scanned (supq path)
  double refinement_delta = 0.0;  // |change| when the grid is doubled
  double standard_error = 0.0;    // Monte-Carlo paths only
};

const char* norm_kind_name(NormEstimate::Kind kind);

enum class LqMode { exact, grid };

// L^q norm; exact mode computes ||f||_q^q by q/2-fold coefficient
// convolution (even integer q <= 8), grid mode by uniform quadrature with a
// doubled-grid refinement delta.  grid_size 0 picks a power of two past the
// bandwidth of |f|^ceil(q), which makes even-q quadrature exact.
NormEstimate lq_norm(const TrigPolynomial& f, double q, LqMode mode,
                     std::size_t grid_size = 0);

enum class Psi2Method { orlicz, supq };

// Subgaussian norm, either as the Orlicz functional (bisection on the grid
// mean of exp(|f/lambda|^2) - 1 = 1) or as max_q ||f||_q / sqrt(q) over even
// q up to 2 ceil(log2(1+terms)) + 8.
NormEstimate psi2_norm(const TrigPolynomial& f, Psi2Method method);

// psi_2 norm of the block character sum over sample members in [2^n, 2^{n+1})
// divided by sqrt(block size).
NormEstimate psi_block_ratio(const SelectorSample& sample, unsigned n);

// Monte-Carlo lower estimate of sup ||f||_q/||f||_2 over f supported on the
// first 64 elements of the set, with unit-variance complex gaussian
// coefficients.
double lambda_q_estimate(const std::vector<std::uint64_t>& set, double q,
                         std::size_t trials, std::uint64_t seed);

// Mean over random sign flips of the coefficients of the grid sup norm.
NormEstimate rider_functional(const TrigPolynomial& f, std::size_t trials,
                              std::uint64_t seed);

}  // namespace furst
