#pragma once

// Design optimizers sharing one run-log format:
//   run_herd        - CEM in the tangent space of the Poincare ball, decoding
//                     samples through the nearest embedded hierarchy node.
//   run_flat_cem    - CEM over per-cell type scores, argmax decode (no
//                     hierarchy, no embedding).
//   run_c2f_ea      - coarse-to-fine evolutionary search over the partition
//                     stack (no embedding).
//   run_random_*    - uniform baseline over tree nodes or raw grids.

#include <cstdint>
#include <random>

#include "herd/embedding.hpp"
#include "herd/fitness.hpp"
#include "herd/runlog.hpp"
#include "herd/tree.hpp"

namespace herd {

struct CemConfig {
    int population = 10;   // N_v
    int elite_count = 0;   // 0 -> max(1, population/3)
    int iterations = 60;   // T
    double sigma_start = 0.2;
    double sigma_end = 0.01;
    uint64_t seed = 0;

    int resolved_elite() const {
        return elite_count > 0 ? elite_count : std::max(1, population / 3);
    }
    void validate() const;
};

struct CemState {
    Vec mu;     // tangent-space mean, initialized to zero
    Vec sigma;  // per-coordinate standard deviation
    int iteration = 0;
};

struct ScoredSample {
    TangentVec v;
    double fitness = 0.0;
};

// Linear schedule from sigma_start (t=0) to sigma_end (t=T).
double sigma_at(int t, const CemConfig& cfg);

// population independent draws, coordinate j ~ Normal(mu_j, sigma_j^2).
// Draws consume the rng in sample-index order.
std::vector<TangentVec> sample_population(const CemState& state, const CemConfig& cfg,
                                          std::mt19937_64& rng);

struct Projection {
    int node_id = -1;
    BallPoint z_mapped;  // exp_0(v), before snapping to the table
};

// Maps v through exp_0 and returns the nearest embedded node (the virtual
// root is never a candidate). Ties break to the lowest node id.
Projection project_to_design(const TangentVec& v, const EmbeddingTable& table);

// mu <- mean of the elite draws (highest fitness, ties by sample index);
// sigma <- schedule value for the next iteration.
CemState cem_update(const CemState& state, const std::vector<ScoredSample>& scored,
                    const CemConfig& cfg);

RunResult run_herd(const DesignTree& tree, const EmbeddingTable& table, Evaluator& evaluator,
                   const CemConfig& cfg, const IterationSink& sink = {});

// Flat CEM over an S x |type_set| score matrix; decode is per-cell argmax
// (ties to the lowest CellType).
RunResult run_flat_cem(const GridShape& shape, const std::vector<CellType>& type_set,
                       Evaluator& evaluator, const CemConfig& cfg,
                       const IterationSink& sink = {});
DesignGrid argmax_decode(const Vec& scores, const GridShape& shape,
                         const std::vector<CellType>& type_set);

struct EaConfig {
    int population = 64;
    int generations = 30;
    double eliminate_fraction = 0.30;
    double type_branch_prob = 0.80;  // else granularity refinement
    double type_mutation_prob = 0.10;
    uint64_t seed = 0;
    std::vector<CellType> type_set = {CellType::Empty, CellType::Rigid, CellType::Soft,
                                      CellType::HorizontalActuator, CellType::VerticalActuator};

    void validate() const;
};

// One EA individual: a component-type assignment at some stack level.
struct EaIndividual {
    int level = 0;  // stack index
    std::vector<CellType> types;
};

// Mutation operators, exposed for testing.
EaIndividual ea_mutate_types(const EaIndividual& ind, const EaConfig& cfg, std::mt19937_64& rng);
EaIndividual ea_refine_granularity(const EaIndividual& ind, const PartitionStack& stack,
                                   const EaConfig& cfg, std::mt19937_64& rng);

RunResult run_c2f_ea(const PartitionStack& stack, Evaluator& evaluator, const EaConfig& cfg,
                     const IterationSink& sink = {});

RunResult run_random_tree(const DesignTree& tree, Evaluator& evaluator, long budget,
                          uint64_t seed, const IterationSink& sink = {});
RunResult run_random_grid(const GridShape& shape, const std::vector<CellType>& type_set,
                          Evaluator& evaluator, long budget, uint64_t seed,
                          const IterationSink& sink = {});

}  // namespace herd
