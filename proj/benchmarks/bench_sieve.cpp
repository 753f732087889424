#include <benchmark/benchmark.h>

#include "sieve/alexander.hpp"
#include "sieve/dwcount.hpp"
#include "sieve/metabelian.hpp"
#include "sieve/obstruct.hpp"

using namespace sieve;

namespace {

void BM_AlexanderPoly(benchmark::State& state) {
  const auto pres = wirtinger(from_braid({1, -2, 1, -2, 1, -2, 1, -2}, 3));
  for (auto _ : state) benchmark::DoNotOptimize(alexander_poly(pres));
}
BENCHMARK(BM_AlexanderPoly);

void BM_Psi(benchmark::State& state) {
  const auto delta = alexander_poly(wirtinger(builtin("5_2")));
  const auto f = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psi(delta, f));
}
BENCHMARK(BM_Psi)->Arg(6)->Arg(30)->Arg(120);

void BM_SurgeryCountKernel(benchmark::State& state) {
  const auto pres = wirtinger(builtin("figure8"));
  const MetabelianGroup g(GroupSpec::zpm(13, 1, 12));
  for (auto _ : state) benchmark::DoNotOptimize(surgery_count(pres, SurgerySlope(12, 1), g));
}
BENCHMARK(BM_SurgeryCountKernel);

void BM_SurgeryCountBrute(benchmark::State& state) {
  const auto pres = wirtinger(builtin("figure8"));
  const MetabelianGroup g(GroupSpec::zpm(13, 1, 12));
  BruteForceOptions opts;
  opts.extra_relators = {surgery_relator(pres, SurgerySlope(12, 1))};
  for (auto _ : state) benchmark::DoNotOptimize(hom_count_bruteforce(pres, g, opts));
}
BENCHMARK(BM_SurgeryCountBrute)->Unit(benchmark::kMillisecond);

void BM_CharacterTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(MetabelianGroup(GroupSpec::fph(3, 2, 8)));
}
BENCHMARK(BM_CharacterTable)->Unit(benchmark::kMillisecond);

void BM_SeifertCharsum(benchmark::State& state) {
  const MetabelianGroup g(GroupSpec::fph(3, 2, 8));
  const SeifertData s(0, {{2, 1}, {3, 1}, {7, -5}});
  for (auto _ : state) benchmark::DoNotOptimize(seifert_count_charsum(s, g));
}
BENCHMARK(BM_SeifertCharsum)->Unit(benchmark::kMillisecond);

void BM_SeifertClosed(benchmark::State& state) {
  const MetabelianGroup g(GroupSpec::fph(3, 2, 8));
  const SeifertData s(0, {{2, 1}, {3, 1}, {7, -5}});
  for (auto _ : state) benchmark::DoNotOptimize(seifert_count_closed(s, g));
}
BENCHMARK(BM_SeifertClosed);

void BM_SeifertBrute(benchmark::State& state) {
  const MetabelianGroup g(GroupSpec::zpm(7, 1, 3));
  const auto pres = seifert_presentation(SeifertData(0, {{2, 1}, {3, 1}, {7, -5}}));
  for (auto _ : state) benchmark::DoNotOptimize(hom_count_bruteforce(pres, g));
}
BENCHMARK(BM_SeifertBrute)->Unit(benchmark::kMillisecond);

void BM_Battery(benchmark::State& state) {
  const auto pres = wirtinger(builtin("figure8"));
  const std::vector<CandidateLeg> legs{{2, std::nullopt}, {3, std::nullopt}, {7, std::nullopt}};
  for (auto _ : state) benchmark::DoNotOptimize(consistency_battery(pres, SurgerySlope(1, 1), legs));
}
BENCHMARK(BM_Battery)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
