#include "herd/fitness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "herd/subprocess.hpp"

namespace herd {

std::vector<double> Evaluator::evaluate_batch(const std::vector<EvalPoint>& pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(evaluate(p));
    return out;
}

EvaluatorSpec::Kind EvaluatorSpec::kind_from_name(const std::string& name) {
    if (name == "pattern_match") return Kind::pattern_match;
    if (name == "actuator_balance") return Kind::actuator_balance;
    if (name == "planted_node") return Kind::planted_node;
    if (name == "external") return Kind::external;
    throw std::invalid_argument("unknown evaluator '" + name + "'");
}

double eval_pattern_match(const DesignGrid& design, const DesignGrid& target,
                          const PartitionStack& stack, const std::vector<double>& weights) {
    if (design.shape != target.shape || design.shape != stack.shape())
        throw std::invalid_argument("eval_pattern_match: shape mismatch");
    if (weights.size() != static_cast<size_t>(stack.num_levels()))
        throw std::invalid_argument("eval_pattern_match: one weight per level required");

    double score = 0.0;
    for (int li = 0; li < stack.num_levels(); ++li) {
        const auto d = coarsen_types(design, stack.level(li));
        const auto t = coarsen_types(target, stack.level(li));
        int matches = 0;
        for (size_t c = 0; c < d.size(); ++c)
            if (d[c] == t[c]) matches++;
        score += weights[li] * matches / stack.level(li).k;
    }
    return score;
}

double eval_actuator_balance(const DesignGrid& design, double target_fraction) {
    int nonempty = 0, actuators = 0;
    for (CellType t : design.cells) {
        if (t == CellType::Empty) continue;
        nonempty++;
        if (t == CellType::HorizontalActuator || t == CellType::VerticalActuator) actuators++;
    }
    if (nonempty == 0) return 0.0;
    double score = 1.0 - std::abs(static_cast<double>(actuators) / nonempty - target_fraction);
    if (validate(design).valid) score += 0.5;
    return score;
}

double eval_planted_node(int node_id, int target_node, const EmbeddingTable& table) {
    if (node_id < 0 || node_id >= table.size())
        throw std::invalid_argument("eval_planted_node: sample is not a hierarchy node");
    return -distance(table.at(node_id), table.at(target_node), table.ball);
}

PatternMatchEvaluator::PatternMatchEvaluator(DesignGrid target, PartitionStack stack,
                                             std::vector<double> weights)
    : target_(std::move(target)), stack_(std::move(stack)), weights_(std::move(weights)) {
    for (double w : weights_)
        if (!(w > 0.0)) throw std::invalid_argument("PatternMatchEvaluator: weights must be positive");
    // Fail fast on mismatched inputs.
    eval_pattern_match(target_, target_, stack_, weights_);
}

double PatternMatchEvaluator::evaluate(const EvalPoint& p) {
    return eval_pattern_match(p.design, target_, stack_, weights_);
}

double CachedEvaluator::evaluate(const EvalPoint& p) {
    const std::string key = serialize(p.design);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
        hits_++;
        return it->second;
    }
    misses_++;
    const double f = inner_->evaluate(p);
    cache_.emplace(key, f);
    return f;
}

std::vector<double> CachedEvaluator::evaluate_batch(const std::vector<EvalPoint>& pts) {
    std::vector<double> out(pts.size());
    std::vector<size_t> miss_idx;
    std::vector<EvalPoint> miss_pts;
    std::vector<std::string> keys(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        keys[i] = serialize(pts[i].design);
        auto it = cache_.find(keys[i]);
        if (it != cache_.end()) {
            hits_++;
            out[i] = it->second;
        } else {
            // A batch can repeat one unseen design; only forward it once.
            bool queued = false;
            for (size_t m : miss_idx)
                if (keys[m] == keys[i]) queued = true;
            if (!queued) {
                miss_idx.push_back(i);
                miss_pts.push_back(pts[i]);
            } else {
                hits_++;
            }
            out[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (!miss_pts.empty()) {
        misses_ += static_cast<long>(miss_pts.size());
        const auto fresh = inner_->evaluate_batch(miss_pts);
        for (size_t m = 0; m < miss_idx.size(); ++m) cache_.emplace(keys[miss_idx[m]], fresh[m]);
    }
    for (size_t i = 0; i < pts.size(); ++i)
        if (std::isnan(out[i])) out[i] = cache_.at(keys[i]);
    return out;
}

std::shared_ptr<Evaluator> make_evaluator(const EvaluatorSpec& spec,
                                          const PartitionStack* stack,
                                          const EmbeddingTable* table) {
    using Kind = EvaluatorSpec::Kind;
    switch (spec.kind) {
        case Kind::pattern_match: {
            if (!stack)
                throw std::invalid_argument("pattern_match needs a partition stack");
            if (spec.target.cells.empty())
                throw std::invalid_argument("pattern_match needs a target design");
            std::vector<double> w = spec.weights;
            if (w.empty()) w.assign(stack->num_levels(), 1.0);
            return std::make_shared<PatternMatchEvaluator>(spec.target, *stack, std::move(w));
        }
        case Kind::actuator_balance:
            if (!(spec.target_fraction > 0.0) || !(spec.target_fraction < 1.0))
                throw std::invalid_argument("actuator_balance needs target_fraction in (0,1)");
            return std::make_shared<ActuatorBalanceEvaluator>(spec.target_fraction);
        case Kind::planted_node:
            if (!table) throw std::invalid_argument("planted_node needs an embedding table");
            if (spec.target_node <= 0 || spec.target_node >= table->size())
                throw std::invalid_argument("planted_node needs a concrete target node");
            return std::make_shared<PlantedNodeEvaluator>(spec.target_node, *table);
        case Kind::external:
            if (spec.command.empty()) throw std::invalid_argument("external needs a command");
            return std::make_shared<ExternalEvaluator>(
                ExternalEvaluatorConfig{spec.command, spec.timeout_secs});
    }
    throw std::invalid_argument("unknown evaluator kind");
}

}  // namespace herd
