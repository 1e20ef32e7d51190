#include <benchmark/benchmark.h>

#include <random>

#include "rotset/rotset.hpp"

using namespace rotset;

namespace {

std::vector<int> all_vertices(const HorseshoeGraph& g) {
  std::vector<int> v(g.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
  return v;
}

// membership in the conv hull of a sharp rotation set, dimension 2g
void BM_Membership(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  auto hull = convex_hull(rotation_set(scc_condense(gen_sharp(g))));
  std::mt19937_64 rng(1);
  std::vector<HomologyVector> queries;
  for (int i = 0; i < 64; ++i) {
    HomologyVector x(g);
    for (std::size_t c = 0; c < x.dim(); ++c) x[c] = Rational(static_cast<long>(rng() % 9), 16);
    queries.push_back(x);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(contains(hull, queries[k++ % queries.size()]));
}
BENCHMARK(BM_Membership)->Arg(2)->Arg(4)->Arg(8);

// exact l-infinity distance LP
void BM_Distance(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  auto hull = convex_hull(rotation_set(scc_condense(gen_sharp(g))));
  auto norm = NormSpec::linf(g);
  HomologyVector x(g);
  for (std::size_t c = 0; c < x.dim(); ++c) x[c] = Rational(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(distance(x, hull, norm));
}
BENCHMARK(BM_Distance)->Arg(2)->Arg(4)->Arg(8);

// Johnson enumeration plus hull on a dense class
void BM_ClassPolytope(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng() % 2 == 0)
        edges.push_back(Edge{i, j, {static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2}, 1});
  for (int i = 0; i < n; ++i) edges.push_back(Edge{i, (i + 1) % n, {0, 0}, 1});
  HorseshoeGraph g(1, names, edges);
  auto members = all_vertices(g);
  for (auto _ : state) benchmark::DoNotOptimize(class_polytope(g, members));
}
BENCHMARK(BM_ClassPolytope)->Arg(4)->Arg(6)->Arg(8);

void BM_RotationSet(benchmark::State& state) {
  auto dag = scc_condense(gen_sharp(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(rotation_set(dag));
}
BENCHMARK(BM_RotationSet)->Arg(4)->Arg(6)->Arg(8);

void BM_Analyze(benchmark::State& state) {
  auto g = gen_sharp(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(scc_condense(g)));
}
BENCHMARK(BM_Analyze)->Arg(4)->Arg(8);

// deviation trace of a 10^4-step walk, with and without bridge displacements
void BM_DeviationTrace(benchmark::State& state) {
  ExampleOptions o;
  if (state.range(0)) o.bridge_seed = 77;
  auto g = gen_figtree(o);
  auto dag = scc_condense(g);
  DeviationEngine engine(rotation_set(dag), default_norm(dag));
  auto w = simulate(g, 0, Policy::uniform(), 10000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(engine.trace(w));
}
BENCHMARK(BM_DeviationTrace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
