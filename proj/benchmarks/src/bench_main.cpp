#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "furst/diophantine.hpp"
#include "furst/quasi_independence.hpp"
#include "furst/selectors.hpp"
#include "furst/semigroup.hpp"
#include "furst/trig_norms.hpp"

namespace {

void BM_EnumerateUpto(benchmark::State& state) {
  furst::SemigroupBasis basis({2, 3});
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) {
    auto terms = furst::enumerate_upto(basis, limit);
    benchmark::DoNotOptimize(terms.data());
  }
}
BENCHMARK(BM_EnumerateUpto)->Arg(4)->Arg(6)->Arg(8);

void BM_CountUpto(benchmark::State& state) {
  furst::SemigroupBasis basis({2, 3});
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(furst::count_upto(basis, limit));
  }
}
BENCHMARK(BM_CountUpto)->Arg(6)->Arg(9)->Arg(12);

void BM_LogRatioConvergents(benchmark::State& state) {
  for (auto _ : state) {
    auto cf = furst::continued_fraction(
        furst::CertifiedReal::log_ratio(2, 3, 512),
        static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(cf.quotients.data());
  }
}
BENCHMARK(BM_LogRatioConvergents)->Arg(10)->Arg(30);

void BM_QuasiIndependenceExact(benchmark::State& state) {
  std::vector<std::uint64_t> set;
  for (int i = 0; i < state.range(0); ++i)
    set.push_back(1000 + static_cast<std::uint64_t>(i) * 37 % 997 * 13 + i);
  for (auto _ : state) {
    auto r = furst::is_quasi_independent(set);
    benchmark::DoNotOptimize(r.quasi_independent);
  }
}
BENCHMARK(BM_QuasiIndependenceExact)->Arg(16)->Arg(24)->Arg(30);

void BM_SampleSelector(benchmark::State& state) {
  auto profile = furst::SelectorProfile::furstenberg();
  for (auto _ : state) {
    auto s = furst::sample_selector(profile,
                                    static_cast<std::size_t>(state.range(0)), 7);
    benchmark::DoNotOptimize(s.members.data());
  }
}
BENCHMARK(BM_SampleSelector)->Arg(100000)->Arg(1000000);

void BM_LqExact(benchmark::State& state) {
  furst::SemigroupBasis basis({2, 3});
  std::vector<std::uint64_t> freqs;
  for (const auto& t :
       furst::enumerate_first(basis, static_cast<std::size_t>(state.range(0))))
    freqs.push_back(t.value.get_ui());
  auto f = furst::TrigPolynomial::characters(freqs);
  for (auto _ : state) {
    auto est = furst::lq_norm(f, 6.0, furst::LqMode::exact);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_LqExact)->Arg(16)->Arg(32);

void BM_Psi2Supq(benchmark::State& state) {
  furst::SemigroupBasis basis({2, 3});
  std::vector<std::uint64_t> freqs;
  for (const auto& t :
       furst::enumerate_first(basis, static_cast<std::size_t>(state.range(0))))
    freqs.push_back(t.value.get_ui());
  auto f = furst::TrigPolynomial::characters(freqs);
  for (auto _ : state) {
    auto est = furst::psi2_norm(f, furst::Psi2Method::supq);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_Psi2Supq)->Arg(16)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
