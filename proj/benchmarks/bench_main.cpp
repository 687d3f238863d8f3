#include <benchmark/benchmark.h>

#include "logiclab/fol.hpp"
#include "logiclab/godel.hpp"
#include "logiclab/hf.hpp"
#include "logiclab/ordinal.hpp"
#include "logiclab/sat.hpp"
#include "logiclab/turing.hpp"

using namespace logiclab;

namespace {

std::set<sat::Pair> cycle(std::size_t n) {
  std::set<sat::Pair> edges;
  for (std::size_t v = 0; v < n; ++v) edges.insert({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
  return edges;
}

// Odd cycles need three colors, so k = 2 forces a full refutation.
void BM_SatColoringOddCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = sat::encode_coloring(n, cycle(n), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sat::solve(p));
}
BENCHMARK(BM_SatColoringOddCycle)->Arg(5)->Arg(9)->Arg(13);

void BM_SatLinearExtension(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::set<sat::Pair> chain;
  for (std::size_t a = 0; a + 1 < n; a += 2) chain.insert({a, a + 1});
  const auto p = sat::encode_linear_extension(n, chain);
  for (auto _ : state) benchmark::DoNotOptimize(sat::solve(p));
}
BENCHMARK(BM_SatLinearExtension)->Arg(4)->Arg(6);

void BM_OrdinalPow(benchmark::State& state) {
  const auto a = ord::parse_ordinal("w^2*3 + w + 2");
  const auto b = ord::parse_ordinal("w + 3");
  for (auto _ : state) benchmark::DoNotOptimize(ord::pow(a, b));
}
BENCHMARK(BM_OrdinalPow);

void BM_GoodsteinRun(benchmark::State& state) {
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ord::goodstein_run(BigNat(4), BigNat(2), steps));
}
BENCHMARK(BM_GoodsteinRun)->Arg(100)->Arg(1000);

void BM_GoodsteinStep36(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ord::goodstein_step(BigNat(36), BigNat(2)));
}
BENCHMARK(BM_GoodsteinStep36);

// vn_universe caches, so only the first iteration pays for the 65536 sets.
void BM_VnUniverse5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hf::vn_universe(5).size());
}
BENCHMARK(BM_VnUniverse5);

void BM_GodelNumber(benchmark::State& state) {
  const auto sig = fol::parse_signature("rel:R/2,fun:f/1,const:c");
  hf::SymbolTable table;
  table.add_signature(sig);
  for (const char* v : {"x", "y", "z"}) table.add_variable(v);
  const auto f = fol::parse_formula(sig, "forall x. exists y. (R(x,f(y)) -> ~R(f(c),z))");
  for (auto _ : state) benchmark::DoNotOptimize(hf::godel_number(table, f));
}
BENCHMARK(BM_GodelNumber);

void BM_TmRunParity(benchmark::State& state) {
  const auto m = tm::fixtures::parity();
  const std::string input(static_cast<std::size_t>(state.range(0)), '1');
  for (auto _ : state) benchmark::DoNotOptimize(tm::run(m, input, 1'000'000));
}
BENCHMARK(BM_TmRunParity)->Arg(16)->Arg(256);

void BM_UtmRunParity(benchmark::State& state) {
  const auto code = tm::encode_machine(tm::fixtures::parity());
  const std::string input(static_cast<std::size_t>(state.range(0)), '1');
  for (auto _ : state) benchmark::DoNotOptimize(tm::utm_run(code, input, 1'000'000));
}
BENCHMARK(BM_UtmRunParity)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
