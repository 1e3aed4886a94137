// Serial reference kernels vs the OpenMP kernels on random sparse graphs.
#include <benchmark/benchmark.h>

#include <random>
#include <map>
#include <set>

#include "vcsc/metrics.hpp"

namespace {

vcsc::SyndicationGraph make_graph(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> w(1, 4);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<vcsc::WeightedEdge> edges;
  // a ring keeps every node non-isolated
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = (i + 1) % n;
    seen.insert({std::min(i, j), std::max(i, j)});
    edges.push_back({i, j, w(rng)});
  }
  while (edges.size() < m) {
    auto a = node(rng), b = node(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    edges.push_back({a, b, w(rng)});
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("F" + std::to_string(1000000 + i));
  return vcsc::SyndicationGraph(names, edges);
}

const vcsc::SyndicationGraph& graph(std::size_t n) {
  static std::map<std::size_t, vcsc::SyndicationGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_graph(n, 5 * n)).first;
  return it->second;
}

template <std::vector<double> (*Kernel)(const vcsc::SyndicationGraph&)>
void run(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g));
  state.SetLabel(std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
}

}  // namespace

BENCHMARK(run<vcsc::kernels::serial::betweenness>)->Name("betweenness/serial")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(run<vcsc::kernels::omp::betweenness>)->Name("betweenness/omp")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(run<vcsc::kernels::serial::closeness>)->Name("closeness/serial")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(run<vcsc::kernels::omp::closeness>)->Name("closeness/omp")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(run<vcsc::kernels::serial::constraint>)->Name("constraint/serial")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(run<vcsc::kernels::omp::constraint>)->Name("constraint/omp")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
