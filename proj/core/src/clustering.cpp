#include "herd/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace herd {

void ClusterConfig::validate(const GridShape& shape) const {
    shape.validate();
    if (levels.empty()) throw std::invalid_argument("ClusterConfig: levels must be non-empty");
    for (size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i] >= levels[i + 1])
            throw std::invalid_argument("ClusterConfig: levels must be strictly increasing");
    if (levels.front() < 1) throw std::invalid_argument("ClusterConfig: levels must be positive");
    if (levels.back() != shape.cell_count())
        throw std::invalid_argument("ClusterConfig: last level must equal the cell count");
    if (max_iters < 1) throw std::invalid_argument("ClusterConfig: max_iters must be positive");
}

namespace {

double sq_dist(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Draw an index with probability proportional to mass[i].
size_t draw_categorical(const std::vector<double>& mass, std::mt19937_64& rng) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (total <= 0.0) {
        // All masses zero (e.g. every point already a center): uniform draw.
        std::uniform_int_distribution<size_t> d(0, mass.size() - 1);
        return d(rng);
    }
    std::uniform_real_distribution<double> d(0.0, total);
    double r = d(rng);
    for (size_t i = 0; i < mass.size(); ++i) {
        r -= mass[i];
        if (r <= 0.0) return i;
    }
    return mass.size() - 1;
}

std::vector<Point2> kmeanspp_seed(const std::vector<Point2>& points,
                                  const std::vector<double>& weights, int k,
                                  std::mt19937_64& rng) {
    std::vector<Point2> centers;
    centers.reserve(k);
    centers.push_back(points[draw_categorical(weights, rng)]);
    std::vector<double> d2(points.size());
    while (static_cast<int>(centers.size()) < k) {
        for (size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : centers) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best * weights[i];
        }
        centers.push_back(points[draw_categorical(d2, rng)]);
    }
    return centers;
}

}  // namespace

KMeansResult weighted_kmeans(const std::vector<Point2>& points,
                             const std::vector<double>& weights, int k,
                             std::mt19937_64& rng, int max_iters) {
    if (k < 1) throw std::invalid_argument("weighted_kmeans: k must be positive");
    if (points.size() != weights.size())
        throw std::invalid_argument("weighted_kmeans: points/weights size mismatch");
    if (static_cast<size_t>(k) > points.size())
        throw std::invalid_argument("weighted_kmeans: k exceeds the number of points");

    KMeansResult res;
    res.centroids = kmeanspp_seed(points, weights, k, rng);
    res.assignment.assign(points.size(), -1);

    for (int iter = 0; iter < max_iters; ++iter) {
        // Assignment step; ties go to the lowest cluster index.
        bool changed = false;
        for (size_t i = 0; i < points.size(); ++i) {
            int best = 0;
            double best_d = sq_dist(points[i], res.centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], res.centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (res.assignment[i] != best) {
                res.assignment[i] = best;
                changed = true;
            }
        }

        // Empty-cluster repair: move in the point farthest from its centroid.
        for (int c = 0; c < k; ++c) {
            if (std::count(res.assignment.begin(), res.assignment.end(), c) > 0) continue;
            size_t far_i = 0;
            double far_d = -1.0;
            for (size_t i = 0; i < points.size(); ++i) {
                const double d = sq_dist(points[i], res.centroids[res.assignment[i]]);
                if (d > far_d &&
                    std::count(res.assignment.begin(), res.assignment.end(), res.assignment[i]) > 1) {
                    far_d = d;
                    far_i = i;
                }
            }
            res.assignment[far_i] = c;
            changed = true;
        }

        // Update step: weighted centroid per cluster.
        std::vector<double> wsum(k, 0.0);
        std::vector<Point2> sums(k);
        for (size_t i = 0; i < points.size(); ++i) {
            const int c = res.assignment[i];
            wsum[c] += weights[i];
            sums[c].x += weights[i] * points[i].x;
            sums[c].y += weights[i] * points[i].y;
        }
        for (int c = 0; c < k; ++c)
            res.centroids[c] = {sums[c].x / wsum[c], sums[c].y / wsum[c]};

        double obj = 0.0;
        for (size_t i = 0; i < points.size(); ++i)
            obj += weights[i] * sq_dist(points[i], res.centroids[res.assignment[i]]);
        res.objective_history.push_back(obj);

        if (!changed) break;
    }
    return res;
}

PartitionStack nested_kmeans(const GridShape& shape, const ClusterConfig& cfg) {
    cfg.validate(shape);
    const int n = shape.cell_count();
    std::mt19937_64 rng(cfg.seed);

    // Finest level: one component per cell, identity labels.
    Partition finest;
    finest.k = n;
    finest.assignment.resize(n);
    for (int i = 0; i < n; ++i) finest.assignment[i] = i;

    std::vector<Partition> levels(cfg.levels.size());
    levels.back() = finest;

    // Walk fine -> coarse, clustering the previous level's component
    // centroids (weighted by owned cell count).
    for (int li = static_cast<int>(cfg.levels.size()) - 2; li >= 0; --li) {
        const Partition& prev = levels[li + 1];
        std::vector<Point2> centroids(prev.k);
        std::vector<double> weights(prev.k, 0.0);
        for (int cell = 0; cell < n; ++cell) {
            const int comp = prev.assignment[cell];
            centroids[comp].x += cell % shape.cols;
            centroids[comp].y += cell / shape.cols;
            weights[comp] += 1.0;
        }
        for (int c = 0; c < prev.k; ++c) {
            centroids[c].x /= weights[c];
            centroids[c].y /= weights[c];
        }

        const KMeansResult km =
            weighted_kmeans(centroids, weights, cfg.levels[li], rng, cfg.max_iters);

        Partition cur;
        cur.k = cfg.levels[li];
        cur.assignment.resize(n);
        for (int cell = 0; cell < n; ++cell)
            cur.assignment[cell] = km.assignment[prev.assignment[cell]];

        // Canonicalize component ids by first-cell order.
        std::vector<int> relabel(cur.k, -1);
        int next = 0;
        for (int cell = 0; cell < n; ++cell) {
            int& r = relabel[cur.assignment[cell]];
            if (r == -1) r = next++;
            cur.assignment[cell] = r;
        }
        levels[li] = std::move(cur);
    }

    return PartitionStack(shape, std::move(levels));
}

}  // namespace herd
