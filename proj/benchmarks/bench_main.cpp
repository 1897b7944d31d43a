#include <benchmark/benchmark.h>

#include <random>

#include "fifonet/embedding.hpp"
#include "fifonet/simulation.hpp"
#include "fifonet/verification.hpp"

using namespace fifonet;

namespace {

LinkParams link(double scale, double jam, std::optional<double> beta, double delta = 0.0) {
  LinkParams p;
  p.jam_density = jam;
  p.demand = ExponentialDemand{scale, 0.5};
  p.supply = AffineSupply{jam};
  p.beta = beta;
  p.delta = delta;
  return p;
}

// A corridor of n diverges: each mainline link feeds the next mainline link
// and an exit ramp.
TrafficNetwork corridor(int n) {
  std::vector<Edge> edges;
  std::int64_t id = 1;
  edges.push_back({LinkId{id++}, std::nullopt, JunctionId{"j0"}});
  for (int j = 0; j < n; ++j) {
    const JunctionId v{"j" + std::to_string(j)};
    std::optional<JunctionId> next;
    if (j + 1 < n) next = JunctionId{"j" + std::to_string(j + 1)};
    edges.push_back({LinkId{id++}, v, next});
    edges.push_back({LinkId{id++}, v, std::nullopt});
  }
  const auto net = Network::build(edges);
  std::vector<LinkParams> params;
  std::vector<double> eta(net.size(), 0.5);
  for (std::size_t l = 0; l < net.size(); ++l) {
    if (net.is_source(l)) {
      params.push_back(link(4, 6, std::nullopt, 3));
    } else if (net.is_sink(l)) {
      params.push_back(link(2, 3, 0.25));
    } else {
      params.push_back(link(4, 6, 0.7));
    }
  }
  return TrafficNetwork(net, params, PartialFifoLanes{eta});
}

std::vector<double> random_state(const TrafficNetwork& sys, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x;
  for (double jam : sys.jam_densities()) x.push_back(std::uniform_real_distribution<double>(0, jam)(rng));
  return x;
}

void BM_VectorField(benchmark::State& state) {
  const auto sys = corridor(static_cast<int>(state.range(0)));
  const auto x = random_state(sys, 1);
  for (auto _ : state) benchmark::DoNotOptimize(vector_field(sys, x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VectorField)->RangeMultiplier(4)->Range(1, 256)->Complexity();

void BM_Decomposition(benchmark::State& state) {
  const auto sys = corridor(static_cast<int>(state.range(0)));
  const auto x = random_state(sys, 2);
  const auto y = random_state(sys, 3);
  for (auto _ : state) benchmark::DoNotOptimize(decomposition(sys, x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decomposition)->RangeMultiplier(4)->Range(1, 256)->Complexity();

void BM_SimulateEmbedding(benchmark::State& state) {
  const auto sys = corridor(static_cast<int>(state.range(0)));
  const std::vector<double> zero(sys.network().size(), 0.0);
  const std::vector<double> jam(sys.jam_densities().begin(), sys.jam_densities().end());
  for (auto _ : state) benchmark::DoNotOptimize(simulate_embedding(sys, {zero, jam}, 50.0, 1e-2));
}
BENCHMARK(BM_SimulateEmbedding)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const auto sys = corridor(static_cast<int>(state.range(0)));
  CertifyOptions o;
  for (auto _ : state) benchmark::DoNotOptimize(certify_convergence(sys, o));
}
BENCHMARK(BM_Certify)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AssumptionAudit(benchmark::State& state) {
  const auto sys = corridor(4);
  AuditOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_assumptions(sys, o));
}
BENCHMARK(BM_AssumptionAudit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
