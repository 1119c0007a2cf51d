#pragma once

// Self-contained SVG rendering of an embedded hierarchy: the disk outline,
// one dot per node colored by granularity level, and optionally one run's
// mean trajectory (polyline) plus its sampled points (crosses).

#include <string>
#include <vector>

#include "herd/embedding.hpp"
#include "herd/tree.hpp"

namespace herd {

struct RunTrajectory {
    std::vector<BallPoint> mu_path;  // exp_0(mu) per iteration, origin first
    std::vector<BallPoint> samples;  // mapped sample points across iterations
};

// Ball radius 1/sqrt(c) maps to the disk radius in user units.
std::string embedding_svg(const DesignTree& tree, const EmbeddingTable& table,
                          const RunTrajectory* trajectory = nullptr);

// Rebuilds a trajectory from a JSON-lines run log (iterations with a mu_after
// field; sample z points where present). Returns an empty path when the log
// carries no tangent-space state (EA, random search).
RunTrajectory trajectory_from_jsonl(const std::string& jsonl_text, const BallConfig& ball);

}  // namespace herd
