#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dlsa/engine.hpp"
#include "dlsa/scheduler.hpp"

using namespace dlsa;

namespace {

NetworkConfig mesh_config(int nodes) {
    NetworkConfig cfg;
    cfg.node_count = nodes;
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
            if (i != j) cfg.links.emplace_back(i, j);
    cfg.out_degree_limit = 2;
    cfg.in_degree_limit = 2;
    cfg.admission_cap = 6;
    cfg.power_cap = 6;
    cfg.avg_power_budget = 4;
    for (int i = 0; i < nodes; ++i) cfg.commodities.push_back(i);
    cfg.channel_states = {
        {"G", 3, 0.25}, {"B", 1, 0.25}, {"C", 2, 0.25}, {"U", 0, 0.25}};
    cfg.control_V = 100;
    cfg.horizon = 0;
    cfg.seed = 1;
    return cfg;
}

struct SelectorFixture {
    NetworkConfig cfg;
    Graph graph;
    WeightMatrix weights;
    std::vector<double> Z;
    ChannelState state;
    RateFunction rate;

    explicit SelectorFixture(int nodes)
        : cfg(mesh_config(nodes)),
          graph(Graph::build(cfg)),
          weights(compute_weights(Mat<double>(nodes, nodes, 0.0))),
          Z(nodes, 1.0),
          state(sample_state(cfg, graph, 7, 0)),
          rate(RateFunction::from_config(cfg)) {
        std::mt19937_64 gen(5);
        Mat<double> q(nodes, nodes, 0.0);
        for (int i = 0; i < nodes; ++i)
            for (int k = 0; k < nodes; ++k)
                if (i != k)
                    q(i, k) = static_cast<double>(gen() >> 11) * 0x1.0p-53 * 50;
        weights = compute_weights(q);
    }
};

}  // namespace

static void BM_SampleState(benchmark::State& state) {
    const auto cfg = mesh_config(4);
    const Graph g = Graph::build(cfg);
    int64_t slot = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_state(cfg, g, 1, slot++));
}
BENCHMARK(BM_SampleState);

static void BM_SelectLinksExact(benchmark::State& state) {
    const SelectorFixture fx(static_cast<int>(state.range(0)));
    const DegreeLimits limits{2, 2, 20};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            select_links_exact(fx.graph, fx.weights, fx.Z, fx.state, fx.rate, limits));
    state.SetLabel(std::to_string(fx.graph.undirected_edges().size()) + " edges");
}
BENCHMARK(BM_SelectLinksExact)->Arg(4)->Arg(5)->Arg(6);

static void BM_SelectLinksGreedy(benchmark::State& state) {
    const SelectorFixture fx(static_cast<int>(state.range(0)));
    const DegreeLimits limits{2, 2, 30};
    for (auto _ : state)
        benchmark::DoNotOptimize(select_links_greedy(fx.graph, fx.weights, fx.Z,
                                                     fx.state, fx.rate, limits));
}
BENCHMARK(BM_SelectLinksGreedy)->Arg(4)->Arg(8)->Arg(16);

static void BM_SlotStep(benchmark::State& state) {
    const auto cfg = mesh_config(4);
    const Graph g = Graph::build(cfg);
    const RateFunction rate = RateFunction::from_config(cfg);
    QueueState qs = QueueState::zeros(4, 4);
    int64_t slot = 0;
    for (auto _ : state) {
        auto res = step(qs, cfg, g, rate, slot++, cfg.seed, {2, 2, 20});
        qs = std::move(res.state);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SlotStep);

static void BM_Run1000Slots(benchmark::State& state) {
    auto cfg = mesh_config(4);
    cfg.horizon = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}
BENCHMARK(BM_Run1000Slots)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
