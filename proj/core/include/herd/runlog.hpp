#pragma once

// Uniform run log emitted by every optimizer: per-iteration sample records
// plus a final summary. Persisted as JSON lines (one iteration per line, then
// one final line) and a CSV summary.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "herd/design.hpp"
#include "herd/geometry.hpp"

namespace herd {

struct SampleRecord {
    Vec v;                   // tangent draw (empty for EA / random search)
    Vec z;                   // exp_0(v) in the ball (empty when not tree-based)
    int node_id = -1;        // hierarchy node, -1 otherwise
    std::string design_key;  // canonical serialization
    double fitness = 0.0;
};

struct IterationRecord {
    int iteration = 0;
    std::vector<SampleRecord> samples;
    Vec mu_after;     // empty for EA / random search
    Vec sigma_after;  // empty for EA / random search
};

struct RunResult {
    DesignGrid best_design;
    int best_node = -1;
    double best_fitness = 0.0;
    long evaluations = 0;        // scored samples across iterations
    long final_evaluations = 0;  // extra scoring of the decoded final design
    long cache_hits = 0;
    std::vector<IterationRecord> iterations;
};

// Invoked after each completed iteration; lets callers stream the log to disk
// so an aborted run still leaves a partial log behind.
using IterationSink = std::function<void(const IterationRecord&)>;

void write_runlog_jsonl(const RunResult& result, std::ostream& out);
void write_runlog_csv(const RunResult& result, std::ostream& out);
std::string iteration_to_jsonl(const IterationRecord& rec);
std::string final_to_jsonl(const RunResult& result);

}  // namespace herd
