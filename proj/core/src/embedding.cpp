#include "herd/embedding.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace herd {

void EmbedConfig::validate() const {
    ball.validate();
    if (ball.dim != 2)
        throw std::invalid_argument("EmbedConfig: the construction is defined for dim == 2");
    if (!(tau > 0.0)) throw std::invalid_argument("EmbedConfig: tau must be positive");
}

std::vector<BallPoint> place_children(const BallPoint& z_q,
                                      const std::optional<BallPoint>& z_p, int deg,
                                      const EmbedConfig& cfg) {
    cfg.validate();
    if (deg <= 0) return {};

    const double c = cfg.ball.curvature;
    // Euclidean radius whose hyperbolic distance from the origin is tau:
    // tanh(sqrt(c)*tau/2)/sqrt(c), i.e. (e^tau-1)/(e^tau+1) at c=1.
    const double radius = std::tanh(std::sqrt(c) * cfg.tau / 2.0) / std::sqrt(c);

    double theta = 0.0;
    int count = deg;
    if (z_p) {
        if (z_p->coords == z_q.coords)
            throw std::invalid_argument("place_children: z_p must differ from z_q");
        const auto reflected = reflect_to_origin(z_q, {*z_p}, cfg.ball);
        theta = std::atan2(reflected[0].coords[1], reflected[0].coords[0]);
        count = deg - 1;
    }

    std::vector<BallPoint> placed;
    placed.reserve(count);
    for (int n = 1; n <= count; ++n) {
        const double a = theta + 2.0 * std::numbers::pi * n / deg;
        placed.emplace_back(radius * std::cos(a), radius * std::sin(a));
    }
    // Reflect back with the same map (it is an involution).
    return reflect_to_origin(z_q, placed, cfg.ball);
}

EmbeddingTable embed_tree(const DesignTree& tree, const EmbedConfig& cfg) {
    cfg.validate();

    EmbeddingTable table;
    table.tau = cfg.tau;
    table.ball = cfg.ball;
    table.points.assign(tree.size(), BallPoint(0.0, 0.0));

    // Node ids are BFS-ordered by construction, so a single id-order pass
    // sees every parent before its children.
    for (const auto& n : tree.nodes()) {
        if (n.children.empty()) continue;
        const int deg = static_cast<int>(n.children.size()) + (n.is_root() ? 0 : 1);
        std::optional<BallPoint> parent;
        if (!n.is_root()) parent = table.points[n.parent];
        const auto placed = place_children(table.points[n.id], parent, deg, cfg);
        if (placed.size() < n.children.size())
            throw std::logic_error("embed_tree: fewer placements than children");
        for (size_t i = 0; i < n.children.size(); ++i)
            table.points[n.children[i]] = placed[i];
    }
    return table;
}

EmbedReport check_embedding(const EmbeddingTable& table, const DesignTree& tree,
                            const EmbedConfig& cfg) {
    if (table.size() != tree.size())
        throw std::invalid_argument("check_embedding: table does not match tree");

    EmbedReport rep;
    rep.min_sibling_separation = std::numeric_limits<double>::infinity();

    for (const auto& n : tree.nodes()) {
        for (int child : n.children) {
            rep.edges++;
            const double d = distance(table.at(n.id), table.at(child), cfg.ball);
            rep.max_parent_child_err = std::max(rep.max_parent_child_err, std::abs(d - cfg.tau));
            if (norm(table.at(child).coords) <= norm(table.at(n.id).coords)) {
                rep.norm_monotone = false;
                rep.norm_violations++;
            }
        }
        for (size_t i = 0; i < n.children.size(); ++i)
            for (size_t j = i + 1; j < n.children.size(); ++j)
                rep.min_sibling_separation =
                    std::min(rep.min_sibling_separation,
                             distance(table.at(n.children[i]), table.at(n.children[j]), cfg.ball));
    }
    return rep;
}

std::string embedding_to_json(const EmbeddingTable& table) {
    nlohmann::json j;
    j["tau"] = table.tau;
    j["dim"] = table.ball.dim;
    j["curvature"] = table.ball.curvature;
    auto& pts = j["points"] = nlohmann::json::array();
    for (int id = 0; id < table.size(); ++id) {
        nlohmann::json p;
        p["id"] = id;
        p["z"] = table.points[id].coords;
        pts.push_back(std::move(p));
    }
    return j.dump();
}

EmbeddingTable embedding_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    EmbeddingTable table;
    table.tau = j.at("tau").get<double>();
    table.ball.dim = j.value("dim", 2);
    table.ball.curvature = j.value("curvature", 1.0);
    table.points.resize(j.at("points").size());
    for (const auto& p : j.at("points")) {
        const int id = p.at("id").get<int>();
        if (id < 0 || id >= table.size())
            throw std::invalid_argument("embedding json: point id out of range");
        table.points[id] = BallPoint(p.at("z").get<Vec>());
    }
    return table;
}

void save_embedding(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << embedding_to_json(table) << '\n';
}

EmbeddingTable load_embedding(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return embedding_from_json(ss.str());
}

}  // namespace herd
