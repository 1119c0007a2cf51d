#pragma once

// Pluggable fitness evaluation. Built-in surrogates are pure and
// deterministic; the external evaluator (subprocess.hpp) speaks a JSON-lines
// protocol. A design-key cache can wrap any design-based evaluator.

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "herd/design.hpp"
#include "herd/embedding.hpp"

namespace herd {

// One scoring request from an optimizer. node_id is the hierarchy node the
// design came from, or -1 when the optimizer searches raw grids.
struct EvalPoint {
    DesignGrid design;
    int node_id = -1;
};

class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual double evaluate(const EvalPoint& p) = 0;
    // Batch hook so process-backed evaluators can pipeline requests.
    virtual std::vector<double> evaluate_batch(const std::vector<EvalPoint>& pts);
    // Design-based evaluators score grids: the optimizer short-circuits
    // invalid designs to kInvalidFitness and may cache by design key.
    // Node-based evaluators (planted_node) score hierarchy positions instead.
    virtual bool design_based() const { return true; }
};

// Which fitness to run and its parameters. make_evaluator (below) validates
// that the parameters required by the kind are present.
struct EvaluatorSpec {
    enum class Kind { pattern_match, actuator_balance, planted_node, external };
    Kind kind = Kind::actuator_balance;

    DesignGrid target;            // pattern_match
    std::vector<double> weights;  // pattern_match; empty -> all ones
    double target_fraction = 0.4; // actuator_balance
    int target_node = -1;         // planted_node
    std::string command;          // external
    double timeout_secs = 300.0;  // external

    static Kind kind_from_name(const std::string& name);
};

// Weighted agreement with a target design across all granularity levels:
// sum_l w_l * (matching components at level l) / k_l, where a component
// matches when majority-coarsened design and target agree on it.
double eval_pattern_match(const DesignGrid& design, const DesignGrid& target,
                          const PartitionStack& stack, const std::vector<double>& weights);

// 1 - |actuator fraction - target| among non-Empty cells (0 when all Empty),
// plus 0.5 when the design is structurally valid.
double eval_actuator_balance(const DesignGrid& design, double target_fraction);

// Negative hyperbolic distance from a node's embedding to a target node's.
double eval_planted_node(int node_id, int target_node, const EmbeddingTable& table);

class PatternMatchEvaluator : public Evaluator {
public:
    PatternMatchEvaluator(DesignGrid target, PartitionStack stack, std::vector<double> weights);
    double evaluate(const EvalPoint& p) override;

private:
    DesignGrid target_;
    PartitionStack stack_;
    std::vector<double> weights_;
};

class ActuatorBalanceEvaluator : public Evaluator {
public:
    explicit ActuatorBalanceEvaluator(double target_fraction)
        : target_fraction_(target_fraction) {}
    double evaluate(const EvalPoint& p) override {
        return eval_actuator_balance(p.design, target_fraction_);
    }

private:
    double target_fraction_;
};

class PlantedNodeEvaluator : public Evaluator {
public:
    PlantedNodeEvaluator(int target_node, const EmbeddingTable& table)
        : target_(target_node), table_(&table) {}
    double evaluate(const EvalPoint& p) override {
        return eval_planted_node(p.node_id, target_, *table_);
    }
    bool design_based() const override { return false; }
    int target_node() const { return target_; }

private:
    int target_;
    const EmbeddingTable* table_;
};

// Memoizes an inner evaluator by canonical design serialization. Repeat
// designs (including identical grids from different nodes) cost one inner
// call. Transparent: cached(e)(d) == e(d).
class CachedEvaluator : public Evaluator {
public:
    explicit CachedEvaluator(std::shared_ptr<Evaluator> inner) : inner_(std::move(inner)) {}
    double evaluate(const EvalPoint& p) override;
    std::vector<double> evaluate_batch(const std::vector<EvalPoint>& pts) override;
    bool design_based() const override { return inner_->design_based(); }

    long hits() const { return hits_; }
    long misses() const { return misses_; }

private:
    std::shared_ptr<Evaluator> inner_;
    std::unordered_map<std::string, double> cache_;
    long hits_ = 0;
    long misses_ = 0;
};

// Builds the evaluator a spec describes. pattern_match needs the stack,
// planted_node needs the embedding table; passing what a kind needs as null
// is an error.
std::shared_ptr<Evaluator> make_evaluator(const EvaluatorSpec& spec,
                                          const PartitionStack* stack,
                                          const EmbeddingTable* table);

}  // namespace herd
