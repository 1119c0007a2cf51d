#pragma once

// Combinatorial (Sarkar-style) tree embedding into the Poincare disk: the
// root sits at the origin and each node's children are placed on a hyperbolic
// circle of radius tau around it, equally spaced away from the parent
// direction, via reflect-to-origin / place / reflect-back.

#include <optional>
#include <string>
#include <vector>

#include "herd/geometry.hpp"
#include "herd/tree.hpp"

namespace herd {

struct EmbedConfig {
    double tau = 1.0;
    BallConfig ball;  // construction requires dim == 2

    void validate() const;
};

// One point per tree node, indexed by node id; root at the origin.
struct EmbeddingTable {
    std::vector<BallPoint> points;
    double tau = 1.0;
    BallConfig ball;

    int size() const { return static_cast<int>(points.size()); }
    const BallPoint& at(int id) const { return points.at(id); }
};

// Place the children of a node embedded at z_q whose parent (if any) is
// embedded at z_p. `deg` is the node's graph degree (children + parent), so
// deg-1 children are placed when a parent is present and deg otherwise.
// Every returned point is at hyperbolic distance exactly tau from z_q.
std::vector<BallPoint> place_children(const BallPoint& z_q,
                                      const std::optional<BallPoint>& z_p, int deg,
                                      const EmbedConfig& cfg);

EmbeddingTable embed_tree(const DesignTree& tree, const EmbedConfig& cfg);

struct EmbedReport {
    double max_parent_child_err = 0.0;   // max |distance(parent,child) - tau|
    bool norm_monotone = true;           // |z_child| > |z_parent| on every edge
    int norm_violations = 0;             // edges breaking monotonicity
    int edges = 0;
    double min_sibling_separation = 0.0; // min pairwise distance among siblings
};

EmbedReport check_embedding(const EmbeddingTable& table, const DesignTree& tree,
                            const EmbedConfig& cfg);

// JSON persistence: {"tau":...,"dim":...,"curvature":...,
//                    "points":[{"id":...,"z":[x,y]},...]}.
std::string embedding_to_json(const EmbeddingTable& table);
EmbeddingTable embedding_from_json(const std::string& text);
void save_embedding(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embedding(const std::string& path);

}  // namespace herd
