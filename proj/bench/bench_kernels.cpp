#include <benchmark/benchmark.h>

#include "dualemb/embed.hpp"
#include "dualemb/free_act.hpp"
#include "dualemb/indep.hpp"
#include "dualemb/kernels.hpp"
#include "dualemb/semigroup.hpp"

using namespace dualemb;

namespace {

const FiniteSemigroup& full4() {
  static const FiniteSemigroup s = named_monoid(MonoidKind::full, 4);
  return s;
}

void BM_Associativity(benchmark::State& st) {
  const auto& s = full4();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::associativity_violations(s.table(), s.size()));
}
BENCHMARK(BM_Associativity)->Unit(benchmark::kMillisecond);

void BM_AssociativitySerial(benchmark::State& st) {
  const auto& s = full4();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::associativity_violations_serial(s.table(), s.size()));
}
BENCHMARK(BM_AssociativitySerial)->Unit(benchmark::kMillisecond);

void BM_VerifyCanonical(benchmark::State& st) {
  const auto src = named_monoid(MonoidKind::full, 3);
  const TransformationOracle target(8);
  const auto w = canonical_powerset_witness(3);
  for (auto _ : st) benchmark::DoNotOptimize(verify_embedding(src, target, w).passed());
}
BENCHMARK(BM_VerifyCanonical)->Unit(benchmark::kMicrosecond);

void BM_VerifyCanonicalSerial(benchmark::State& st) {
  const auto src = named_monoid(MonoidKind::full, 3);
  const TransformationOracle target(8);
  const auto w = canonical_powerset_witness(3);
  for (auto _ : st) benchmark::DoNotOptimize(verify_embedding_serial(src, target, w).passed());
}
BENCHMARK(BM_VerifyCanonicalSerial)->Unit(benchmark::kMicrosecond);

void BM_Matroid(benchmark::State& st) {
  const FreeActAlgebra a(two_null_monoid(), 3);
  for (auto _ : st) benchmark::DoNotOptimize(matroid_check(a).matroid());
}
BENCHMARK(BM_Matroid)->Unit(benchmark::kMillisecond);

void BM_MatroidSerial(benchmark::State& st) {
  const FreeActAlgebra a(two_null_monoid(), 3);
  for (auto _ : st) benchmark::DoNotOptimize(matroid_check_serial(a).matroid());
}
BENCHMARK(BM_MatroidSerial)->Unit(benchmark::kMillisecond);

void BM_SearchSelf2IntoDualSelf4(benchmark::State& st) {
  const auto src = named_monoid(MonoidKind::full, 2);
  const auto& tgt = full4();
  SearchOptions o;
  o.dual_target = true;
  o.jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(search_embedding(src, tgt, o).outcome);
}
BENCHMARK(BM_SearchSelf2IntoDualSelf4)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
