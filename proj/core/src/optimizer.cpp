#include "herd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace herd {

void CemConfig::validate() const {
    if (population < 1) throw std::invalid_argument("CemConfig: population must be positive");
    if (elite_count < 0 || elite_count > population)
        throw std::invalid_argument("CemConfig: elite_count must be in [0, population]");
    if (iterations < 0) throw std::invalid_argument("CemConfig: iterations must be >= 0");
    if (!(sigma_start > 0.0) || !(sigma_end > 0.0))
        throw std::invalid_argument("CemConfig: sigma values must be positive");
    if (sigma_end > sigma_start)
        throw std::invalid_argument("CemConfig: sigma_end must not exceed sigma_start");
}

double sigma_at(int t, const CemConfig& cfg) {
    const int T = std::max(1, cfg.iterations);
    if (t < 0 || t > T) throw std::out_of_range("sigma_at: t outside [0, T]");
    if (t == 0) return cfg.sigma_start;  // endpoints exact
    if (t == T) return cfg.sigma_end;
    return cfg.sigma_start + (cfg.sigma_end - cfg.sigma_start) * static_cast<double>(t) / T;
}

std::vector<TangentVec> sample_population(const CemState& state, const CemConfig& cfg,
                                          std::mt19937_64& rng) {
    std::vector<TangentVec> out;
    out.reserve(cfg.population);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < cfg.population; ++i) {
        Vec v(state.mu.size());
        for (size_t j = 0; j < v.size(); ++j) v[j] = state.mu[j] + state.sigma[j] * unit(rng);
        out.emplace_back(std::move(v));
    }
    return out;
}

Projection project_to_design(const TangentVec& v, const EmbeddingTable& table) {
    if (table.size() < 2)
        throw std::invalid_argument("project_to_design: table has no concrete designs");

    Projection proj;
    proj.z_mapped = exp_map(BallPoint(Vec(v.coords.size(), 0.0)), v, table.ball);

    double best = std::numeric_limits<double>::infinity();
    // Index 0 is the virtual root; it never decodes to a design.
    for (int id = 1; id < table.size(); ++id) {
        const double d = distance(proj.z_mapped, table.at(id), table.ball);
        if (d < best) {
            best = d;
            proj.node_id = id;
        }
    }
    return proj;
}

CemState cem_update(const CemState& state, const std::vector<ScoredSample>& scored,
                    const CemConfig& cfg) {
    if (scored.empty()) throw std::invalid_argument("cem_update: no scored samples");
    const int elite = std::min(cfg.resolved_elite(), static_cast<int>(scored.size()));

    std::vector<size_t> order(scored.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return scored[a].fitness > scored[b].fitness;  // ties keep sample-index order
    });

    CemState next;
    next.mu.assign(state.mu.size(), 0.0);
    for (int e = 0; e < elite; ++e) {
        const Vec& v = scored[order[e]].v.coords;
        for (size_t j = 0; j < next.mu.size(); ++j) next.mu[j] += v[j];
    }
    for (double& m : next.mu) m /= elite;

    next.iteration = state.iteration + 1;
    next.sigma.assign(state.sigma.size(), sigma_at(next.iteration, cfg));
    return next;
}

namespace {

// Applies the invalid-design penalty in front of design-based evaluators and
// forwards everything else as one pipelined batch.
std::vector<double> score_batch(Evaluator& evaluator, const std::vector<EvalPoint>& pts) {
    std::vector<double> out(pts.size(), 0.0);
    if (!evaluator.design_based()) return evaluator.evaluate_batch(pts);

    std::vector<size_t> fwd_idx;
    std::vector<EvalPoint> fwd;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (validate(pts[i].design).valid) {
            fwd_idx.push_back(i);
            fwd.push_back(pts[i]);
        } else {
            out[i] = kInvalidFitness;
        }
    }
    if (!fwd.empty()) {
        const auto scores = evaluator.evaluate_batch(fwd);
        for (size_t m = 0; m < fwd_idx.size(); ++m) out[fwd_idx[m]] = scores[m];
    }
    return out;
}

long cache_hits_of(Evaluator& evaluator) {
    if (auto* c = dynamic_cast<CachedEvaluator*>(&evaluator)) return c->hits();
    return 0;
}

void require_sane_state(const CemState& state) {
    for (double m : state.mu)
        if (!std::isfinite(m)) throw std::logic_error("CEM mean became non-finite");
}

struct BestTracker {
    double fitness = -std::numeric_limits<double>::infinity();
    long evals = 0;
    long evals_to_best = 0;

    void observe(double f) {
        evals++;
        if (f > fitness) {
            fitness = f;
            evals_to_best = evals;
        }
    }
};

}  // namespace

RunResult run_herd(const DesignTree& tree, const EmbeddingTable& table, Evaluator& evaluator,
                   const CemConfig& cfg, const IterationSink& sink) {
    cfg.validate();
    if (table.size() != tree.size())
        throw std::invalid_argument("run_herd: embedding table does not match tree");

    std::mt19937_64 rng(cfg.seed);
    const int d = table.ball.dim;
    CemState state{Vec(d, 0.0), Vec(d, sigma_at(0, cfg)), 0};

    RunResult result;
    const long hits0 = cache_hits_of(evaluator);
    BestTracker tracker;

    for (int t = 0; t < cfg.iterations; ++t) {
        const auto draws = sample_population(state, cfg, rng);

        std::vector<Projection> projs;
        std::vector<EvalPoint> pts;
        projs.reserve(draws.size());
        pts.reserve(draws.size());
        for (const auto& v : draws) {
            projs.push_back(project_to_design(v, table));
            pts.push_back({tree.node(projs.back().node_id).grid, projs.back().node_id});
        }
        const auto fitnesses = score_batch(evaluator, pts);

        IterationRecord rec;
        rec.iteration = t;
        std::vector<ScoredSample> scored;
        scored.reserve(draws.size());
        for (size_t i = 0; i < draws.size(); ++i) {
            tracker.observe(fitnesses[i]);
            scored.push_back({draws[i], fitnesses[i]});
            rec.samples.push_back({draws[i].coords, projs[i].z_mapped.coords, projs[i].node_id,
                                   serialize(pts[i].design), fitnesses[i]});
        }

        state = cem_update(state, scored, cfg);
        require_sane_state(state);

        rec.mu_after = state.mu;
        rec.sigma_after = state.sigma;
        result.iterations.push_back(rec);
        if (sink) sink(rec);
    }

    // Final decode: the design nearest exp_0(mu).
    const Projection final_proj = project_to_design(TangentVec(state.mu), table);
    result.best_node = final_proj.node_id;
    result.best_design = tree.node(final_proj.node_id).grid;
    result.best_fitness =
        score_batch(evaluator, {{result.best_design, result.best_node}})[0];
    result.evaluations = tracker.evals;
    result.final_evaluations = 1;
    result.cache_hits = cache_hits_of(evaluator) - hits0;
    return result;
}

DesignGrid argmax_decode(const Vec& scores, const GridShape& shape,
                         const std::vector<CellType>& type_set) {
    const size_t m = type_set.size();
    if (scores.size() != static_cast<size_t>(shape.cell_count()) * m)
        throw std::invalid_argument("argmax_decode: score vector size mismatch");

    DesignGrid out;
    out.shape = shape;
    out.cells.resize(shape.cell_count());
    for (int cell = 0; cell < shape.cell_count(); ++cell) {
        size_t best = 0;
        for (size_t t = 1; t < m; ++t)
            if (scores[cell * m + t] > scores[cell * m + best]) best = t;  // ties keep lower type
        out.cells[cell] = type_set[best];
    }
    return out;
}

RunResult run_flat_cem(const GridShape& shape, const std::vector<CellType>& type_set,
                       Evaluator& evaluator, const CemConfig& cfg, const IterationSink& sink) {
    cfg.validate();
    shape.validate();
    if (type_set.empty()) throw std::invalid_argument("run_flat_cem: empty type_set");
    // Keep argmax tie-breaking aligned with CellType order.
    std::vector<CellType> types = type_set;
    std::sort(types.begin(), types.end());

    std::mt19937_64 rng(cfg.seed);
    const int d = shape.cell_count() * static_cast<int>(types.size());
    CemState state{Vec(d, 0.0), Vec(d, sigma_at(0, cfg)), 0};

    RunResult result;
    const long hits0 = cache_hits_of(evaluator);
    BestTracker tracker;

    for (int t = 0; t < cfg.iterations; ++t) {
        const auto draws = sample_population(state, cfg, rng);
        std::vector<EvalPoint> pts;
        pts.reserve(draws.size());
        for (const auto& v : draws) pts.push_back({argmax_decode(v.coords, shape, types), -1});
        const auto fitnesses = score_batch(evaluator, pts);

        IterationRecord rec;
        rec.iteration = t;
        std::vector<ScoredSample> scored;
        scored.reserve(draws.size());
        for (size_t i = 0; i < draws.size(); ++i) {
            tracker.observe(fitnesses[i]);
            scored.push_back({draws[i], fitnesses[i]});
            rec.samples.push_back({draws[i].coords, {}, -1, serialize(pts[i].design), fitnesses[i]});
        }

        state = cem_update(state, scored, cfg);
        require_sane_state(state);

        rec.mu_after = state.mu;
        rec.sigma_after = state.sigma;
        result.iterations.push_back(rec);
        if (sink) sink(rec);
    }

    result.best_design = argmax_decode(state.mu, shape, types);
    result.best_node = -1;
    result.best_fitness = score_batch(evaluator, {{result.best_design, -1}})[0];
    result.evaluations = tracker.evals;
    result.final_evaluations = 1;
    result.cache_hits = cache_hits_of(evaluator) - hits0;
    return result;
}

void EaConfig::validate() const {
    if (population < 2) throw std::invalid_argument("EaConfig: population must be >= 2");
    if (generations < 1) throw std::invalid_argument("EaConfig: generations must be >= 1");
    if (eliminate_fraction <= 0.0 || eliminate_fraction >= 1.0)
        throw std::invalid_argument("EaConfig: eliminate_fraction must be in (0,1)");
    if (type_branch_prob < 0.0 || type_branch_prob > 1.0 || type_mutation_prob < 0.0 ||
        type_mutation_prob > 1.0)
        throw std::invalid_argument("EaConfig: probabilities must be in [0,1]");
    if (type_set.empty()) throw std::invalid_argument("EaConfig: empty type_set");
}

EaIndividual ea_mutate_types(const EaIndividual& ind, const EaConfig& cfg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<size_t> type_draw(0, cfg.type_set.size() - 1);
    EaIndividual out = ind;
    for (auto& t : out.types)
        if (coin(rng) < cfg.type_mutation_prob) t = cfg.type_set[type_draw(rng)];
    return out;
}

EaIndividual ea_refine_granularity(const EaIndividual& ind, const PartitionStack& stack,
                                   const EaConfig& cfg, std::mt19937_64& rng) {
    if (ind.level + 1 >= stack.num_levels()) return ind;  // already finest

    const Partition& coarse = stack.level(ind.level);
    const Partition& fine = stack.level(ind.level + 1);
    std::vector<int> up(fine.k, -1);
    for (size_t cell = 0; cell < fine.assignment.size(); ++cell)
        up[fine.assignment[cell]] = coarse.assignment[cell];

    EaIndividual out;
    out.level = ind.level + 1;
    out.types.resize(fine.k);
    for (int fc = 0; fc < fine.k; ++fc) out.types[fc] = ind.types[up[fc]];

    std::uniform_int_distribution<int> comp_draw(0, coarse.k - 1);
    const int chosen = comp_draw(rng);
    std::vector<int> subs;
    for (int fc = 0; fc < fine.k; ++fc)
        if (up[fc] == chosen) subs.push_back(fc);
    std::uniform_int_distribution<size_t> sub_draw(0, subs.size() - 1);
    std::uniform_int_distribution<size_t> type_draw(0, cfg.type_set.size() - 1);
    out.types[subs[sub_draw(rng)]] = cfg.type_set[type_draw(rng)];
    return out;
}

RunResult run_c2f_ea(const PartitionStack& stack, Evaluator& evaluator, const EaConfig& cfg,
                     const IterationSink& sink) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    std::vector<CellType> non_empty;
    for (CellType t : cfg.type_set)
        if (t != CellType::Empty) non_empty.push_back(t);
    if (non_empty.empty()) throw std::invalid_argument("run_c2f_ea: no non-Empty types");

    // Start from coarse-grained robots with random non-Empty component types.
    std::vector<EaIndividual> pop(cfg.population);
    std::uniform_int_distribution<size_t> init_draw(0, non_empty.size() - 1);
    for (auto& ind : pop) {
        ind.level = 0;
        ind.types.resize(stack.level(0).k);
        for (auto& t : ind.types) t = non_empty[init_draw(rng)];
    }

    RunResult result;
    const long hits0 = cache_hits_of(evaluator);
    BestTracker tracker;
    double best_fitness = -std::numeric_limits<double>::infinity();
    DesignGrid best_design;

    const int eliminate = std::max(
        1, static_cast<int>(std::floor(cfg.eliminate_fraction * cfg.population)));

    for (int g = 0; g < cfg.generations; ++g) {
        std::vector<EvalPoint> pts;
        pts.reserve(pop.size());
        for (const auto& ind : pop)
            pts.push_back({render(ComponentAssignment{ind.level, ind.types}, stack), -1});
        const auto fitnesses = score_batch(evaluator, pts);

        IterationRecord rec;
        rec.iteration = g;
        for (size_t i = 0; i < pop.size(); ++i) {
            tracker.observe(fitnesses[i]);
            if (fitnesses[i] > best_fitness) {
                best_fitness = fitnesses[i];
                best_design = pts[i].design;
            }
            rec.samples.push_back({{}, {}, -1, serialize(pts[i].design), fitnesses[i]});
        }
        result.iterations.push_back(rec);
        if (sink) sink(rec);

        if (g + 1 == cfg.generations) break;

        // Rank by fitness (ties keep index order), drop the tail, refill by
        // mutating uniformly drawn survivors.
        std::vector<size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return fitnesses[a] > fitnesses[b]; });

        std::vector<EaIndividual> survivors;
        for (size_t r = 0; r + eliminate < order.size(); ++r) survivors.push_back(pop[order[r]]);

        std::uniform_int_distribution<size_t> pick(0, survivors.size() - 1);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::vector<EaIndividual> next = survivors;
        while (static_cast<int>(next.size()) < cfg.population) {
            const EaIndividual& parent = survivors[pick(rng)];
            if (coin(rng) < cfg.type_branch_prob)
                next.push_back(ea_mutate_types(parent, cfg, rng));
            else
                next.push_back(ea_refine_granularity(parent, stack, cfg, rng));
        }
        pop = std::move(next);
    }

    result.best_design = best_design;
    result.best_node = -1;
    result.best_fitness = best_fitness;
    result.evaluations = tracker.evals;
    result.cache_hits = cache_hits_of(evaluator) - hits0;
    return result;
}

namespace {

RunResult run_random(Evaluator& evaluator, long budget,
                     const std::function<std::pair<DesignGrid, int>(std::mt19937_64&)>& draw,
                     uint64_t seed, const IterationSink& sink) {
    if (budget < 1) throw std::invalid_argument("random search: budget must be >= 1");
    std::mt19937_64 rng(seed);

    RunResult result;
    const long hits0 = cache_hits_of(evaluator);
    BestTracker tracker;
    double best_fitness = -std::numeric_limits<double>::infinity();
    DesignGrid best_design;
    int best_node = -1;

    for (long i = 0; i < budget; ++i) {
        auto [design, node] = draw(rng);
        const double f = score_batch(evaluator, {{design, node}})[0];
        tracker.observe(f);
        if (f > best_fitness) {
            best_fitness = f;
            best_design = design;
            best_node = node;
        }
        IterationRecord rec;
        rec.iteration = static_cast<int>(i);
        rec.samples.push_back({{}, {}, node, serialize(design), f});
        result.iterations.push_back(rec);
        if (sink) sink(rec);
    }

    result.best_design = best_design;
    result.best_node = best_node;
    result.best_fitness = best_fitness;
    result.evaluations = tracker.evals;
    result.cache_hits = cache_hits_of(evaluator) - hits0;
    return result;
}

}  // namespace

RunResult run_random_tree(const DesignTree& tree, Evaluator& evaluator, long budget,
                          uint64_t seed, const IterationSink& sink) {
    if (tree.size() < 2) throw std::invalid_argument("run_random_tree: no concrete designs");
    return run_random(
        evaluator, budget,
        [&tree](std::mt19937_64& rng) {
            std::uniform_int_distribution<int> pick(1, tree.size() - 1);  // skip virtual root
            const int id = pick(rng);
            return std::make_pair(tree.node(id).grid, id);
        },
        seed, sink);
}

RunResult run_random_grid(const GridShape& shape, const std::vector<CellType>& type_set,
                          Evaluator& evaluator, long budget, uint64_t seed,
                          const IterationSink& sink) {
    shape.validate();
    if (type_set.empty()) throw std::invalid_argument("run_random_grid: empty type_set");
    return run_random(
        evaluator, budget,
        [&shape, &type_set](std::mt19937_64& rng) {
            std::uniform_int_distribution<size_t> pick(0, type_set.size() - 1);
            DesignGrid g;
            g.shape = shape;
            g.cells.resize(shape.cell_count());
            for (auto& c : g.cells) c = type_set[pick(rng)];
            return std::make_pair(std::move(g), -1);
        },
        seed, sink);
}

}  // namespace herd
