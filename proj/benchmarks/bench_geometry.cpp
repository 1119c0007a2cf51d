#include <benchmark/benchmark.h>

#include <random>

#include "herd/geometry.hpp"

using namespace herd;

namespace {

const BallConfig kBall{2, 1.0};

std::vector<BallPoint> sample_points(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(0.0, 0.95), a(0.0, 6.28318);
    std::vector<BallPoint> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double radius = r(rng), angle = a(rng);
        pts.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    return pts;
}

void BM_Distance(benchmark::State& state) {
    const auto pts = sample_points(1024, 1);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance(pts[i % 1024], pts[(i + 7) % 1024], kBall));
        ++i;
    }
}
BENCHMARK(BM_Distance);

void BM_MobiusAdd(benchmark::State& state) {
    const auto pts = sample_points(1024, 2);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mobius_add(pts[i % 1024], pts[(i + 3) % 1024], kBall));
        ++i;
    }
}
BENCHMARK(BM_MobiusAdd);

void BM_ExpLogRoundtrip(benchmark::State& state) {
    const auto pts = sample_points(1024, 3);
    const BallPoint origin(0.0, 0.0);
    size_t i = 0;
    for (auto _ : state) {
        const TangentVec v = log_map(origin, pts[i % 1024], kBall);
        benchmark::DoNotOptimize(exp_map(origin, v, kBall));
        ++i;
    }
}
BENCHMARK(BM_ExpLogRoundtrip);

void BM_ReflectToOrigin(benchmark::State& state) {
    const auto pts = sample_points(static_cast<size_t>(state.range(0)) + 1, 4);
    const std::vector<BallPoint> targets(pts.begin() + 1, pts.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(reflect_to_origin(pts[0], targets, kBall));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReflectToOrigin)->Arg(8)->Arg(64);

}  // namespace
