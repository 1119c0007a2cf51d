#pragma once

// External fitness evaluation over a child process. One JSON object per line:
//   request  {"id":N,"design":{"shape":[r,c],"cells":"ERSHV..."}}
//   response {"id":N,"fitness":F} or {"id":N,"error":"..."}
// Requests for a batch are pipelined before responses are read; responses may
// arrive in any order and are matched by id. Request ids are consecutive
// integers per evaluator instance, starting at 0.

#include <stdexcept>
#include <string>
#include <vector>

#include "herd/fitness.hpp"

namespace herd {

// Raised on timeouts, malformed responses, child failures, and {"error":...}
// responses. Optimizer runs abort on it, keeping the partial log.
struct EvaluatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExternalEvaluatorConfig {
    std::string command;         // run through /bin/sh -c
    double timeout_secs = 300.0; // per-request; HERD_EVAL_TIMEOUT_SECS overrides
};

class ExternalEvaluator : public Evaluator {
public:
    explicit ExternalEvaluator(ExternalEvaluatorConfig cfg);
    ~ExternalEvaluator() override;

    ExternalEvaluator(const ExternalEvaluator&) = delete;
    ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

    double evaluate(const EvalPoint& p) override;
    std::vector<double> evaluate_batch(const std::vector<EvalPoint>& pts) override;

private:
    void spawn();
    void shutdown();
    // Sends the batch and collects responses; on a dead child retries once
    // with a fresh process before giving up.
    std::vector<double> run_batch(const std::vector<EvalPoint>& pts, bool allow_restart);

    ExternalEvaluatorConfig cfg_;
    long next_id_ = 0;
    int pid_ = -1;
    int to_child_ = -1;    // write end
    int from_child_ = -1;  // read end
    std::string read_buf_;
};

}  // namespace herd
