#include <benchmark/benchmark.h>

#include "abeltrans/complements.hpp"
#include "abeltrans/oracle.hpp"

using namespace abeltrans;

namespace {

// C2^6 x C4 with A = C2^3; many complements.
Subgroup complement_subject() {
  const AbelianGroup g{2, 2, 2, 2, 2, 2, 4};
  return Subgroup::generated(g, {g.unit(0), g.unit(1), g.unit(2)});
}

std::vector<Subgroup> incidence_targets(const AbelianGroup& g) {
  std::vector<Subgroup> out;
  for (std::int64_t s = 1; s < 8; ++s) out.push_back(Subgroup::generated(g, {g.element({1, s, 0}), g.unit(2)}));
  return out;
}

}  // namespace

static void BM_EnumerateComplements(benchmark::State& state) {
  const auto a = complement_subject();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_complements(a));
}
BENCHMARK(BM_EnumerateComplements)->Unit(benchmark::kMillisecond);

static void BM_EnumerateComplementsSerial(benchmark::State& state) {
  const auto a = complement_subject();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_complements_serial(a));
}
BENCHMARK(BM_EnumerateComplementsSerial)->Unit(benchmark::kMillisecond);

static void BM_CosetIncidence(benchmark::State& state) {
  const AbelianGroup g{8, 8, 64};
  const ElementTable table(g, g.order());
  const auto targets = incidence_targets(g);
  for (auto _ : state) benchmark::DoNotOptimize(coset_incidence(table, targets));
}
BENCHMARK(BM_CosetIncidence)->Unit(benchmark::kMillisecond);

static void BM_CosetIncidenceSerial(benchmark::State& state) {
  const AbelianGroup g{8, 8, 64};
  const ElementTable table(g, g.order());
  const auto targets = incidence_targets(g);
  for (auto _ : state) benchmark::DoNotOptimize(coset_incidence_serial(table, targets));
}
BENCHMARK(BM_CosetIncidenceSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
