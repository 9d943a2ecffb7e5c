#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "stablecentres/bounding.hpp"
#include "stablecentres/classalg.hpp"
#include "stablecentres/groups.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/qcombinat.hpp"

using namespace stc;

namespace {

Mat random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<Scalar>(rng() % f.size());
    if (rank(m) == n) return m;
  }
}

void BM_MatMul(benchmark::State& st) {
  const Field& f = field_of_order(static_cast<std::uint64_t>(st.range(1)));
  std::mt19937_64 rng(1);
  const Mat a = random_invertible(f, static_cast<int>(st.range(0)), rng);
  const Mat b = random_invertible(f, static_cast<int>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(mat_mul(a, b));
}
BENCHMARK(BM_MatMul)->Args({4, 2})->Args({8, 3})->Args({16, 4});

void BM_MatInv(benchmark::State& st) {
  const Field& f = field_of_order(static_cast<std::uint64_t>(st.range(1)));
  std::mt19937_64 rng(2);
  const Mat a = random_invertible(f, static_cast<int>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(mat_inv(a));
}
BENCHMARK(BM_MatInv)->Args({4, 2})->Args({8, 3})->Args({16, 4});

void BM_TypeOf(benchmark::State& st) {
  const Field& f = field_of_order(3);
  std::mt19937_64 rng(3);
  const Mat a = random_invertible(f, static_cast<int>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(type_of(a));
}
BENCHMARK(BM_TypeOf)->Arg(4)->Arg(8)->Arg(12);

void BM_ConjugacyClasses(benchmark::State& st) {
  const auto g = std::make_shared<const GroupTable>(build_group(Family::GL, 2, static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(conjugacy_classes(g));
}
BENCHMARK(BM_ConjugacyClasses)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CentreProduct(benchmark::State& st) {
  const auto ctx = gl_type_context(2, static_cast<int>(st.range(0)));
  const auto tv = *ctx->find_label(label_parse("gl,q=2;t+1:(1)"));
  for (auto _ : st) benchmark::DoNotOptimize(centre_product(*ctx, tv, tv));
}
BENCHMARK(BM_CentreProduct)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_QBinomial(benchmark::State& st) {
  const QValue q(3);
  for (auto _ : st) benchmark::DoNotOptimize(q_binomial(st.range(0), st.range(0) / 2, q));
}
BENCHMARK(BM_QBinomial)->Arg(16)->Arg(64);

void BM_TripleOrbits(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(triple_orbits(static_cast<unsigned>(st.range(0)), 2));
}
BENCHMARK(BM_TripleOrbits)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
