#include <random>

#include <benchmark/benchmark.h>

#include "derq/consistency.hpp"
#include "derq/isomorphism.hpp"
#include "derq/maxclass.hpp"
#include "derq/pc_group.hpp"
#include "derq/perm_group.hpp"
#include "derq/series.hpp"

using namespace derq;

namespace {

const std::vector<PcPresentation>& maxclass5() {
  static const auto classes = enumerate_maxclass(5, 6).classes;
  return classes;
}

ExponentWord random_element(std::mt19937_64& rng, int rank, int p) {
  ExponentWord w(rank);
  for (int i = 0; i < rank; ++i) w.set(i, static_cast<int>(rng() % static_cast<unsigned>(p)));
  return w;
}

void BM_Multiply(benchmark::State& state) {
  const PcGroup g(maxclass5()[static_cast<std::size_t>(state.range(0))]);
  std::mt19937_64 rng(1);
  std::vector<ExponentWord> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(random_element(rng, g.rank(), g.prime()));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.multiply(xs[k % 256], xs[(k + 1) % 256]));
    ++k;
  }
}
BENCHMARK(BM_Multiply)->Arg(0)->Arg(38);

void BM_NormalizeByRewriting(benchmark::State& state) {
  const PcGroup g(maxclass5().back());
  std::mt19937_64 rng(2);
  std::vector<Letter> word;
  for (int i = 0; i < 12; ++i) word.push_back({static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4)});
  for (auto _ : state) benchmark::DoNotOptimize(g.normalize_by_rewriting(word));
}
BENCHMARK(BM_NormalizeByRewriting);

void BM_ConsistencyCheck(benchmark::State& state) {
  const auto& pres = maxclass5().back();
  for (auto _ : state) benchmark::DoNotOptimize(is_consistent(pres));
}
BENCHMARK(BM_ConsistencyCheck);

void BM_SchreierSimsSylow2(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sylow2_sym(m).order());
}
BENCHMARK(BM_SchreierSimsSylow2)->Arg(16)->Arg(32)->Arg(64);

void BM_ScanSylow2(benchmark::State& state) {
  const PermGroup g(sylow2_sym(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(small_quotient_scan(g));
}
BENCHMARK(BM_ScanSylow2)->Arg(8)->Arg(16);

void BM_ScanPc(benchmark::State& state) {
  const PcGroup g(maxclass5().back());
  for (auto _ : state) benchmark::DoNotOptimize(small_quotient_scan(g));
}
BENCHMARK(BM_ScanPc);

void BM_IsoSearchPositive(benchmark::State& state) {
  const IsoData a(maxclass5()[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphism(a, a).isomorphic);
}
BENCHMARK(BM_IsoSearchPositive)->Arg(0)->Arg(38)->Unit(benchmark::kMillisecond);

void BM_IsoSearchNegative(benchmark::State& state) {
  const IsoData a(maxclass5()[0]), b(maxclass5()[1]);
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphism(a, b).isomorphic);
}
BENCHMARK(BM_IsoSearchNegative)->Unit(benchmark::kMillisecond);

void BM_ExtensionSolutions(benchmark::State& state) {
  const auto parent = maxclass5().back().truncated(5);
  for (auto _ : state) benchmark::DoNotOptimize(extension_solutions(parent));
}
BENCHMARK(BM_ExtensionSolutions)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
