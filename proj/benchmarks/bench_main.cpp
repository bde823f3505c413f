#include <benchmark/benchmark.h>

#include "netepi/continuous.hpp"
#include "netepi/graph.hpp"
#include "netepi/isolation.hpp"
#include "netepi/meanfield.hpp"
#include "netepi/spectral.hpp"
#include "netepi/stochastic.hpp"

using namespace netepi;

static void BM_GenPowerlaw(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gen_powerlaw(n, 2, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenPowerlaw)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_GenExponential(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gen_exponential(n, 0.25, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenExponential)->Arg(1000)->Arg(10000);

static void BM_SurvivabilityScore(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = gen_powerlaw(n, 2, 1);
    const auto links = LinkProbs::uniform(g, 0.4);
    const auto params = NodeParams::homogeneous(n, 1.0, 0.65, 0.3);
    for (auto _ : state)
        benchmark::DoNotOptimize(survivability_score(g, links, params).score);
}
BENCHMARK(BM_SurvivabilityScore)->Arg(1000)->Arg(10000);

static void BM_LatticeSpectralRadius(benchmark::State& state) {
    const auto g = gen_lattice4(25, 40);
    for (auto _ : state)
        benchmark::DoNotOptimize(adjacency_spectral_radius(g).value);
}
BENCHMARK(BM_LatticeSpectralRadius);

static void BM_SisStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = gen_powerlaw(n, 2, 1);
    const auto links = LinkProbs::uniform(g, 0.05);
    const auto params = NodeParams::homogeneous(n, 1.0, 0.05, 0.3);
    auto st = MfState::uniform(n, 0.1);
    const StepOptions opts{BoundPolicy::report, 1e-12, nullptr};
    for (auto _ : state) {
        st = sis_step(st, links, params, opts);
        benchmark::DoNotOptimize(st.p.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SisStep)->Arg(1000)->Arg(100000);

static void BM_McStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = gen_powerlaw(n, 2, 1);
    const auto links = LinkProbs::uniform(g, 0.3);
    const auto params = NodeParams::homogeneous(n, 1.0, 0.1, 0.3);
    std::vector<NodeState> states(n, NodeState::no_info);
    for (std::size_t i = 0; i < n; i += 10)
        states[i] = NodeState::has_info;
    rng_t rng(1);
    for (auto _ : state) {
        states = mc_step(states, links, params, DiscreteModel::sis, rng);
        benchmark::DoNotOptimize(states.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McStep)->Arg(1000)->Arg(100000);

static void BM_SisOde(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(ode::integrate(ode::Model::sis, {0.99, 0.01, 0.0}, {1.0, 0.1, 0.0}, 0.01, 200.0));
}
BENCHMARK(BM_SisOde);

static void BM_GreedyRemoval(benchmark::State& state) {
    const auto g = gen_powerlaw(500, 2, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_edge_removal(g, 10).second.lambda1_after);
}
BENCHMARK(BM_GreedyRemoval);

BENCHMARK_MAIN();
