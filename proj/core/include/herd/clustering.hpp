#pragma once

// Weighted K-Means (k-means++ seeding, Lloyd iterations) on 2-D points, and
// the nested partition stack built by clustering each level's component
// centroids into the next coarser level.

#include <cstdint>
#include <random>
#include <vector>

#include "herd/design.hpp"

namespace herd {

struct ClusterConfig {
    std::vector<int> levels = {1, 2, 4, 8, 16, 25};  // strictly increasing, last = cell count
    uint64_t seed = 0;
    int max_iters = 100;

    void validate(const GridShape& shape) const;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct KMeansResult {
    std::vector<int> assignment;            // point index -> cluster in [0,k)
    std::vector<Point2> centroids;          // k entries
    std::vector<double> objective_history;  // weighted SSE after each Lloyd update
};

// Lloyd's algorithm with weighted points. Deterministic for a fixed rng
// state. Empty clusters are repaired by moving in the point farthest from its
// current centroid. Throws if k exceeds the number of points.
KMeansResult weighted_kmeans(const std::vector<Point2>& points,
                             const std::vector<double>& weights, int k,
                             std::mt19937_64& rng, int max_iters);

// Builds the full nested stack for a grid: the finest level is the singleton
// partition; each coarser level clusters the previous level's component
// centroids (weighted by cell count). Component ids are canonicalized by
// first-cell order, so the result is deterministic for a fixed seed.
PartitionStack nested_kmeans(const GridShape& shape, const ClusterConfig& cfg);

}  // namespace herd
