#include <benchmark/benchmark.h>

#include <random>

#include "herd/clustering.hpp"
#include "herd/embedding.hpp"
#include "herd/optimizer.hpp"

using namespace herd;

namespace {

DesignTree make_tree(int max_nodes) {
    ClusterConfig ccfg;
    ccfg.seed = 1;
    const auto stack = nested_kmeans({5, 5}, ccfg);
    TreeBuildConfig tcfg;
    tcfg.max_nodes = max_nodes;
    tcfg.seed = 1;
    return build_tree(stack, tcfg);
}

void BM_NestedKMeans(benchmark::State& state) {
    ClusterConfig cfg;
    cfg.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(nested_kmeans({5, 5}, cfg));
}
BENCHMARK(BM_NestedKMeans);

void BM_BuildTree(benchmark::State& state) {
    ClusterConfig ccfg;
    ccfg.seed = 1;
    const auto stack = nested_kmeans({5, 5}, ccfg);
    TreeBuildConfig tcfg;
    tcfg.max_nodes = static_cast<int>(state.range(0));
    tcfg.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(build_tree(stack, tcfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTree)->Arg(2000)->Arg(20000);

void BM_EmbedTree(benchmark::State& state) {
    const auto tree = make_tree(static_cast<int>(state.range(0)));
    EmbedConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(embed_tree(tree, cfg));
    state.SetItemsProcessed(state.iterations() * tree.size());
}
BENCHMARK(BM_EmbedTree)->Arg(2000)->Arg(20000);

void BM_NearestLookup(benchmark::State& state) {
    const auto tree = make_tree(static_cast<int>(state.range(0)));
    const auto table = embed_tree(tree, EmbedConfig{});
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(project_to_design(TangentVec(g(rng), g(rng)), table));
    state.SetItemsProcessed(state.iterations() * table.size());
}
BENCHMARK(BM_NearestLookup)->Arg(2000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
