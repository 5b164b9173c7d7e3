// Microbenchmarks for the hot paths: routing queries, accessibility
// preprocessing, model construction, the exact solver and the
// enumeration oracle. Instances are drawn once per size so repeated
// iterations measure the algorithm, not the generator.

#include <benchmark/benchmark.h>

#include <sstream>
#include <vector>

#include "flexride/instance_gen.hpp"
#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/oracle.hpp"
#include "flexride/preprocess.hpp"
#include "flexride/rng.hpp"
#include "flexride/solve.hpp"
#include "flexride/trips.hpp"

namespace {

using namespace flexride;

// Grid with bidirectional street arcs, side * side nodes.
RoadNetwork grid_network(int side) {
  std::vector<NodeInfo> nodes;
  std::vector<NetworkEdge> edges;
  auto id = [side](int r, int c) {
    return static_cast<NodeId>(r * side + c + 1);
  };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      nodes.push_back({id(r, c), 45.0 + 0.001 * r, 7.0 + 0.001 * c});
    }
  }
  auto connect = [&](NodeId a, NodeId b, Seconds t) {
    edges.push_back({a, b, t, false});
    edges.push_back({b, a, t, false});
  };
  Rng rng(9001);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      Seconds t = rng.uniform(20, 90);
      if (c + 1 < side) connect(id(r, c), id(r, c + 1), t);
      if (r + 1 < side) connect(id(r, c), id(r + 1, c), t + 5);
    }
  }
  return RoadNetwork::build(std::move(nodes), std::move(edges));
}

struct PreparedInstance {
  TinyInstance inst;
  std::vector<EnrichedParticipant> parts;
  AccessSets sets;
  ModelInstance model;
};

PreparedInstance prepared(std::uint64_t seed) {
  Rng rng(seed);
  PreparedInstance p;
  p.inst = generate_instance(rng);
  p.parts = enrich_all(p.inst.net, p.inst.parts);
  p.sets = build_access_sets(p.inst.net, p.parts, {});
  p.model = build_model(p.inst.net, p.parts, p.sets, p.inst.config);
  return p;
}

void BM_ShortestTimes(benchmark::State& state) {
  RoadNetwork net = grid_network(static_cast<int>(state.range(0)));
  NodeId last = static_cast<NodeId>(net.node_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.shortest_travel_time(1, last));
  }
}
BENCHMARK(BM_ShortestTimes)->Arg(10)->Arg(20)->Arg(40);

void BM_RankedPaths(benchmark::State& state) {
  RoadNetwork net = grid_network(8);
  NodeId last = static_cast<NodeId>(net.node_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        net.k_shortest_paths(1, last, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_RankedPaths)->Arg(1)->Arg(5)->Arg(25);

void BM_AccessSets(benchmark::State& state) {
  Rng rng(77);
  GenOptions go;
  go.min_nodes = go.max_nodes = static_cast<int>(state.range(0));
  go.max_participants = 4;
  TinyInstance inst = generate_instance(rng, go);
  std::vector<EnrichedParticipant> parts = enrich_all(inst.net, inst.parts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_access_sets(inst.net, parts, {}));
  }
}
BENCHMARK(BM_AccessSets)->Arg(6)->Arg(8);

void BM_BuildModel(benchmark::State& state) {
  PreparedInstance p = prepared(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_model(p.inst.net, p.parts, p.sets, p.inst.config));
  }
}
BENCHMARK(BM_BuildModel)->Arg(11)->Arg(23);

void BM_ExportModel(benchmark::State& state) {
  PreparedInstance p = prepared(11);
  for (auto _ : state) {
    std::ostringstream out;
    export_lp(p.model, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ExportModel);

void BM_SolveExact(benchmark::State& state) {
  PreparedInstance p = prepared(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(p.model, {}));
  }
}
BENCHMARK(BM_SolveExact)->Arg(11)->Arg(23)->Arg(37);

void BM_Oracle(benchmark::State& state) {
  PreparedInstance p = prepared(static_cast<std::uint64_t>(state.range(0)));
  OracleLimits lim;
  lim.max_nodes = p.inst.net.node_count();
  lim.max_participants = p.parts.size();
  lim.max_route_length = p.inst.net.node_count() - 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle_optimum(p.inst.net, p.parts, p.inst.config, lim));
  }
}
BENCHMARK(BM_Oracle)->Arg(11)->Arg(23)->Arg(37);

} // namespace

BENCHMARK_MAIN();
