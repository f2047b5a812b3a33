#include <benchmark/benchmark.h>

#include <vector>

#include "belief/diagnosis.hpp"
#include "belief/plausibility.hpp"
#include "belief/prop.hpp"
#include "belief/revision.hpp"
#include "belief/update.hpp"

using namespace belief;

namespace {

std::vector<Formula> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse_formula(t));
  return out;
}

Vocabulary atoms(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return Vocabulary(names);
}

// Truth-table extension of a chain formula over n atoms.
void BM_Extension(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Vocabulary v = atoms(n);
  Formula f = parse_formula("a0");
  for (std::size_t i = 1; i < n; ++i) f = (f & parse_formula("a" + std::to_string(i))) | !parse_formula("a0");
  for (auto _ : state) benchmark::DoNotOptimize(extension(f, v));
  state.SetComplexityN(static_cast<std::int64_t>(v.world_count()));
}
BENCHMARK(BM_Extension)->DenseRange(4, 16, 4)->Complexity();

void BM_MinU(benchmark::State& state) {
  Vocabulary v = atoms(static_cast<std::size_t>(state.range(0)));
  auto u = UpdateStructure::hamming(v);
  Extension a = extension(parse_formula("a0 & a1"), v);
  Extension b = extension(parse_formula("!a0"), v);
  for (auto _ : state) benchmark::DoNotOptimize(min_u(u, a, b));
}
BENCHMARK(BM_MinU)->DenseRange(2, 8, 2);

void BM_AgmSweep(benchmark::State& state) {
  Vocabulary v({"p", "q"});
  std::vector<Rank> ranks{1, 0, 2, 3};
  auto inputs = all_subsets(Extension::all(4));
  auto op = RevisionOperator::from_ranking(ranks);
  Extension k = minimal_worlds(ranks, Extension::all(4));
  for (auto _ : state) benchmark::DoNotOptimize(check_agm(op, k, inputs, v));
}
BENCHMARK(BM_AgmSweep);

void BM_SystemFromUpdate(benchmark::State& state) {
  Vocabulary v({"p", "q"});
  auto u = UpdateStructure::hamming(v);
  auto menu = parse_all({"true", "p", "!p", "q", "!q", "p & q"});
  int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(system_from_update(u, horizon, menu).run_count());
}
BENCHMARK(BM_SystemFromUpdate)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ValidateRev(benchmark::State& state) {
  Vocabulary v({"p", "q"});
  std::vector<Rank> ranks{1, 0, 2, 0};
  auto op = RevisionOperator::from_ranking(ranks);
  System sys = system_from_revision(op, minimal_worlds(ranks, Extension::all(4)), v,
                                    parse_all({"true", "p", "!q", "p | q"}), 2);
  for (auto _ : state) benchmark::DoNotOptimize(validate_rev(sys));
}
BENCHMARK(BM_ValidateRev)->Unit(benchmark::kMillisecond);

void BM_PropDiag(benchmark::State& state) {
  Circuit c({Gate{"g1", GateKind::Xor, {"a", "b"}, "x"}, Gate{"g2", GateKind::And, {"x", "c"}, "y"},
             Gate{"g3", GateKind::Not, {"y"}, "z"}});
  auto d = build_diag_system(c, {{{"a", true}, {"b", false}, {"c", true}}, {{"a", true}, {"b", true}, {"c", true}}});
  for (auto _ : state) benchmark::DoNotOptimize(check_prop_diag(d));
}
BENCHMARK(BM_PropDiag)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
