#pragma once

// Desk-scale benchmark harness: a planted-target pattern-match landscape over
// a restricted design space, runnable by every optimizer under a shared
// budget, with per-(method, seed) results and a CSV emitter.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "herd/optimizer.hpp"

namespace herd {

struct BenchmarkConfig {
    GridShape shape = {3, 3};
    std::vector<int> levels = {1, 3, 9};
    std::vector<CellType> type_set = {CellType::Empty, CellType::Rigid,
                                      CellType::HorizontalActuator};
    int max_nodes = 20000;
    int max_children = 4;
    double tau = 0.35;    // small tau keeps leaf shells within late-CEM reach
    long budget = 2000;
    int population = 40;  // CEM population; iterations = budget / population
    int elite = 4;
    uint64_t seed = 0;    // varies tree build, target choice, and optimizer

    void validate() const;
};

// One benchmark instance: hierarchy, embedding, and a planted target grid
// (the grid of a seeded random valid finest-level tree node, so the global
// optimum of the pattern-match landscape is reachable by every method).
struct BenchmarkInstance {
    DesignTree tree;
    EmbeddingTable table;
    DesignGrid target;
    int target_node = -1;
};

BenchmarkInstance make_benchmark(const BenchmarkConfig& cfg);

// success and best_fitness use anytime (best-sampled) semantics, uniformly
// across methods, matching the analytic uniform-sampling bound for random
// search. The Algorithm-1 style final decode stays the optimize command's
// best.txt output.
struct MethodResult {
    std::string method;
    uint64_t seed = 0;
    bool success = false;  // the run sampled the planted optimum
    long evals_to_best = 0;
    double best_fitness = 0.0;
};

// method is one of "herd", "flat_cem", "c2f_ea", "random".
MethodResult run_benchmark_method(const std::string& method, const BenchmarkConfig& cfg);

// Rows ordered method-major then seed; byte-stable across repeated runs.
void write_compare_csv(const std::vector<MethodResult>& rows, std::ostream& out);

// Exhaustively scores every grid over the restricted type set (with the
// structural-validity penalty applied, as the optimizers see it) and returns
// the maximizer. Intended as an independent oracle for small spaces.
DesignGrid brute_force_optimum(const GridShape& shape, const std::vector<CellType>& type_set,
                               const DesignGrid& target, const PartitionStack& stack,
                               const std::vector<double>& weights);

}  // namespace herd
