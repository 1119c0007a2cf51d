#include "herd/compare.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "herd/clustering.hpp"

namespace herd {

namespace {

// Distinct deterministic streams derived from one benchmark seed.
uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + stream * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void BenchmarkConfig::validate() const {
    shape.validate();
    if (budget < 1) throw std::invalid_argument("BenchmarkConfig: budget must be >= 1");
    if (population < 1) throw std::invalid_argument("BenchmarkConfig: population must be >= 1");
    if (budget < population)
        throw std::invalid_argument("BenchmarkConfig: budget below one CEM iteration");
}

BenchmarkInstance make_benchmark(const BenchmarkConfig& cfg) {
    cfg.validate();

    ClusterConfig ccfg;
    ccfg.levels = cfg.levels;
    ccfg.seed = mix_seed(cfg.seed, 1);
    const PartitionStack stack = nested_kmeans(cfg.shape, ccfg);

    TreeBuildConfig tcfg;
    tcfg.max_nodes = cfg.max_nodes;
    tcfg.max_children = cfg.max_children;
    tcfg.seed = mix_seed(cfg.seed, 2);
    tcfg.type_set = cfg.type_set;
    DesignTree tree = build_tree(stack, tcfg);

    EmbedConfig ecfg;
    ecfg.tau = cfg.tau;
    EmbeddingTable table = embed_tree(tree, ecfg);

    // Plant the target at a seeded random *valid* finest-level node so the
    // optimum is both unique and attainable by tree-based methods.
    const int finest = tree.depth();
    std::vector<int> candidates;
    for (const auto& n : tree.nodes())
        if (n.level == finest && validate(n.grid).valid) candidates.push_back(n.id);
    if (candidates.empty())
        throw std::runtime_error("make_benchmark: no valid finest-level node to plant");
    std::mt19937_64 rng(mix_seed(cfg.seed, 3));
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
    const int target_node = candidates[pick(rng)];

    BenchmarkInstance inst{std::move(tree), std::move(table), DesignGrid{}, target_node};
    inst.target = inst.tree.node(target_node).grid;
    return inst;
}

MethodResult run_benchmark_method(const std::string& method, const BenchmarkConfig& cfg) {
    const BenchmarkInstance inst = make_benchmark(cfg);
    const std::vector<double> weights(inst.tree.stack().num_levels(), 1.0);
    auto inner = std::make_shared<PatternMatchEvaluator>(inst.target, inst.tree.stack(), weights);
    CachedEvaluator evaluator(inner);
    const uint64_t opt_seed = mix_seed(cfg.seed, 4);

    RunResult run;
    if (method == "herd") {
        CemConfig c;
        c.population = cfg.population;
        c.elite_count = cfg.elite;
        c.iterations = static_cast<int>(cfg.budget / cfg.population);
        c.seed = opt_seed;
        run = run_herd(inst.tree, inst.table, evaluator, c);
    } else if (method == "flat_cem") {
        CemConfig c;
        c.population = cfg.population;
        c.elite_count = cfg.elite;
        c.iterations = static_cast<int>(cfg.budget / cfg.population);
        c.seed = opt_seed;
        run = run_flat_cem(cfg.shape, cfg.type_set, evaluator, c);
    } else if (method == "c2f_ea") {
        EaConfig c;
        c.generations = std::max(1, static_cast<int>(cfg.budget / c.population));
        c.seed = opt_seed;
        c.type_set = cfg.type_set;
        run = run_c2f_ea(inst.tree.stack(), evaluator, c);
    } else if (method == "random") {
        run = run_random_grid(cfg.shape, cfg.type_set, evaluator, cfg.budget, opt_seed);
    } else {
        throw std::invalid_argument("unknown method '" + method + "'");
    }

    MethodResult res;
    res.method = method;
    res.seed = cfg.seed;

    // Best-sampled fitness, the evaluation index where it first appeared, and
    // whether the planted optimum was ever drawn.
    const std::string target_key = serialize(inst.target);
    double best = -std::numeric_limits<double>::infinity();
    long count = 0;
    for (const auto& rec : run.iterations) {
        for (const auto& s : rec.samples) {
            count++;
            if (s.fitness > best) {
                best = s.fitness;
                res.evals_to_best = count;
            }
            if (s.design_key == target_key) res.success = true;
        }
    }
    res.best_fitness = best;
    return res;
}

void write_compare_csv(const std::vector<MethodResult>& rows, std::ostream& out) {
    out << "method,seed,success,evals_to_best,best_fitness\n";
    for (const auto& r : rows)
        out << r.method << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << r.evals_to_best
            << ',' << fmt17(r.best_fitness) << '\n';
}

DesignGrid brute_force_optimum(const GridShape& shape, const std::vector<CellType>& type_set,
                               const DesignGrid& target, const PartitionStack& stack,
                               const std::vector<double>& weights) {
    const int n = shape.cell_count();
    const size_t m = type_set.size();
    double total = 1.0;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<double>(m);
        if (total > 2e7) throw std::invalid_argument("brute_force_optimum: space too large");
    }

    DesignGrid cur = DesignGrid::filled(shape, type_set[0]);
    std::vector<size_t> digits(n, 0);
    DesignGrid best;
    double best_f = -std::numeric_limits<double>::infinity();
    const long count = static_cast<long>(total);
    for (long i = 0; i < count; ++i) {
        const double f = validate(cur).valid
                             ? eval_pattern_match(cur, target, stack, weights)
                             : kInvalidFitness;
        if (f > best_f) {
            best_f = f;
            best = cur;
        }
        // Odometer step through the restricted space.
        for (int d = 0; d < n; ++d) {
            digits[d] = (digits[d] + 1) % m;
            cur.cells[d] = type_set[digits[d]];
            if (digits[d] != 0) break;
        }
    }
    return best;
}

}  // namespace herd
