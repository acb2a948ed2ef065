#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "schunck/blocks.hpp"
#include "schunck/catalog.hpp"
#include "schunck/cohomology.hpp"
#include "schunck/groups.hpp"

using namespace schunck;

namespace {

std::string read(const std::string& rel) {
  std::ifstream in(std::string(SCHUNCK_SOURCE_DIR) + "/" + rel);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

LiePtr laff3() { return std::make_shared<const LieAlgebra>(parse_lie_algebra(read("data/algebras/l_aff_3.lie"))); }

GroupPtr group(const std::string& name) { return std::make_shared<const FiniteGroup>(builtin_group(name)); }

void BM_GenerateLieCatalog(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int maxdim = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(generate_lie_catalog(p, maxdim));
}
BENCHMARK(BM_GenerateLieCatalog)->Args({2, 3})->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_ChiefSeriesGroup(benchmark::State& state) {
  const GroupPtr g = group("S4");
  for (auto _ : state) benchmark::DoNotOptimize(chief_series(*g));
}
BENCHMARK(BM_ChiefSeriesGroup);

void BM_H1TrivialGroupModule(benchmark::State& state) {
  const GroupPtr g = group("SL(2,3)");
  const Module m = Module::trivial(Field(2), g, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(h1(m));
}
BENCHMARK(BM_H1TrivialGroupModule)->Arg(1)->Arg(2)->Arg(4);

void BM_Universe(benchmark::State& state) {
  const Structure s(group("S4"), Field(2), "S4");
  for (auto _ : state) benchmark::DoNotOptimize(generate_universe(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Universe)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ChiefsB0Lie(benchmark::State& state) {
  const Structure s(laff3(), "l_aff_3");
  for (auto _ : state) benchmark::DoNotOptimize(check_chiefsB0(s, 3));
}
BENCHMARK(BM_ChiefsB0Lie)->Unit(benchmark::kMillisecond);

void BM_VerifyFormation(benchmark::State& state) {
  Catalog cat = generate_lie_catalog(3, 4);
  cat.merge(builtin_group_catalog());
  const ClassSpec spec = parse_class_spec(read("specs/supersoluble.cls"));
  for (auto _ : state) benchmark::DoNotOptimize(verify_formation(spec, cat, VerifyMode::Full));
}
BENCHMARK(BM_VerifyFormation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
