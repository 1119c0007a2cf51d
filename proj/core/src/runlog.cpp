#include "herd/runlog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

namespace herd {

namespace {

nlohmann::json sample_json(const SampleRecord& s) {
    nlohmann::json j;
    j["v"] = s.v;
    j["z"] = s.z;
    j["node"] = s.node_id;
    j["design"] = s.design_key;
    j["fitness"] = s.fitness;
    return j;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string iteration_to_jsonl(const IterationRecord& rec) {
    nlohmann::json j;
    j["iteration"] = rec.iteration;
    auto& samples = j["samples"] = nlohmann::json::array();
    for (const auto& s : rec.samples) samples.push_back(sample_json(s));
    j["mu_after"] = rec.mu_after;
    j["sigma_after"] = rec.sigma_after;
    return j.dump();
}

std::string final_to_jsonl(const RunResult& result) {
    nlohmann::json j;
    auto& f = j["final"];
    f["best_node"] = result.best_node;
    f["best_design"] = serialize(result.best_design);
    f["best_fitness"] = result.best_fitness;
    f["evaluations"] = result.evaluations;
    f["final_evaluations"] = result.final_evaluations;
    f["cache_hits"] = result.cache_hits;
    return j.dump();
}

void write_runlog_jsonl(const RunResult& result, std::ostream& out) {
    for (const auto& rec : result.iterations) out << iteration_to_jsonl(rec) << '\n';
    out << final_to_jsonl(result) << '\n';
}

void write_runlog_csv(const RunResult& result, std::ostream& out) {
    out << "iteration,best_fitness,mean_fitness,mu_norm,sigma\n";
    for (const auto& rec : result.iterations) {
        double best = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (const auto& s : rec.samples) {
            best = std::max(best, s.fitness);
            sum += s.fitness;
        }
        const double mean = rec.samples.empty() ? 0.0 : sum / rec.samples.size();
        const double mu_norm = rec.mu_after.empty() ? 0.0 : norm(rec.mu_after);
        const double sigma = rec.sigma_after.empty() ? 0.0 : rec.sigma_after.front();
        out << rec.iteration << ',' << fmt17(best) << ',' << fmt17(mean) << ','
            << fmt17(mu_norm) << ',' << fmt17(sigma) << '\n';
    }
}

}  // namespace herd
