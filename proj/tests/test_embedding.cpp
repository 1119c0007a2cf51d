#include <doctest.h>

#include <cmath>
#include <numbers>

#include "herd/clustering.hpp"
#include "herd/embedding.hpp"

using namespace herd;

namespace {

// A path of `depth` edges below the root, as a hand-built tree on a 1x1 grid
// stack (levels are irrelevant for placement; only the shape of the node
// graph matters to the embedder).
DesignTree path_tree(int depth) {
    Partition only{1, {0}};
    PartitionStack stack({1, 1}, {only});
    std::vector<TreeNode> nodes(depth + 1);
    for (int i = 0; i <= depth; ++i) {
        nodes[i].id = i;
        nodes[i].parent = i - 1;
        nodes[i].level = i;
        if (i > 0) {
            nodes[i].types = {CellType::Rigid};
            nodes[i].grid = DesignGrid::filled({1, 1}, CellType::Rigid);
            nodes[i - 1].children.push_back(i);
        }
    }
    return DesignTree(stack, std::move(nodes));
}

DesignTree default_tree(uint64_t seed, int max_nodes, int max_children) {
    ClusterConfig ccfg;
    ccfg.seed = seed;
    const auto stack = nested_kmeans({5, 5}, ccfg);
    TreeBuildConfig tcfg;
    tcfg.max_nodes = max_nodes;
    tcfg.max_children = max_children;
    tcfg.seed = seed;
    return build_tree(stack, tcfg);
}

}  // namespace

TEST_SUITE_BEGIN("embedding");

TEST_CASE("root children sit on the tau circle, equally spaced") {
    EmbedConfig cfg;
    cfg.tau = std::log(3.0);
    const auto placed = place_children(BallPoint(0.0, 0.0), std::nullopt, 4, cfg);
    REQUIRE(placed.size() == 4);
    // (e^tau - 1)/(e^tau + 1) = 0.5 at tau = ln 3; angles start at 2*pi/4.
    for (int n = 0; n < 4; ++n) {
        const double a = 2.0 * std::numbers::pi * (n + 1) / 4.0;
        CHECK(placed[n].coords[0] == doctest::Approx(0.5 * std::cos(a)).epsilon(1e-12));
        CHECK(placed[n].coords[1] == doctest::Approx(0.5 * std::sin(a)).epsilon(1e-12));
    }
}

TEST_CASE("placements are at hyperbolic distance tau from the node") {
    EmbedConfig cfg;
    cfg.tau = 1.0;
    const BallPoint zq(0.4, -0.3), zp(0.1, 0.05);
    const auto placed = place_children(zq, zp, 7, cfg);
    REQUIRE(placed.size() == 6);
    for (const auto& c : placed)
        CHECK(std::abs(distance(zq, c, cfg.ball) - cfg.tau) <= 1e-9);
}

TEST_CASE("one child with a parent goes opposite the parent") {
    EmbedConfig cfg;
    cfg.tau = 1.0;
    const BallPoint zq(0.3, 0.0), zp(0.0, 0.0);
    const auto placed = place_children(zq, zp, 2, cfg);  // parent + one child
    REQUIRE(placed.size() == 1);
    // Opposite-most placement makes root, q, child collinear: distances add.
    CHECK(distance(zp, placed[0], cfg.ball) ==
          doctest::Approx(distance(zp, zq, cfg.ball) + cfg.tau).epsilon(1e-9));
}

TEST_CASE("degenerate degrees") {
    EmbedConfig cfg;
    CHECK(place_children(BallPoint(0.2, 0.0), std::nullopt, 0, cfg).empty());
    // deg=1 with a parent means the node is a leaf: nothing to place.
    CHECK(place_children(BallPoint(0.2, 0.0), BallPoint(0.0, 0.0), 1, cfg).empty());
    CHECK_THROWS_AS(place_children(BallPoint(0.2, 0.0), BallPoint(0.2, 0.0), 3, cfg),
                    std::invalid_argument);
}

TEST_CASE("construction requires dim 2") {
    EmbedConfig cfg;
    cfg.ball.dim = 3;
    CHECK_THROWS_AS(place_children(BallPoint(0.0, 0.0), std::nullopt, 2, cfg),
                    std::invalid_argument);
}

TEST_CASE("single-node tree embeds at the origin") {
    const auto tree = path_tree(0);
    const auto table = embed_tree(tree, EmbedConfig{});
    REQUIRE(table.size() == 1);
    CHECK(norm(table.at(0).coords) == 0.0);

    const auto rep = check_embedding(table, tree, EmbedConfig{});
    CHECK(rep.edges == 0);
    CHECK(rep.norm_monotone);
    CHECK(rep.max_parent_child_err == 0.0);
}

TEST_CASE("path tree embeds isometrically") {
    const auto tree = path_tree(5);
    EmbedConfig cfg;
    cfg.tau = 1.0;
    const auto table = embed_tree(tree, cfg);
    for (int d = 0; d <= 5; ++d)
        CHECK(std::abs(distance(table.at(0), table.at(d), cfg.ball) - d * cfg.tau) <= 1e-9);

    const auto rep = check_embedding(table, tree, cfg);
    CHECK(rep.max_parent_child_err <= 1e-9);
    CHECK(rep.norm_monotone);
}

TEST_CASE("default tree embedding: exact edges, in-ball, deterministic") {
    const auto tree = default_tree(7, 2000, 8);
    EmbedConfig cfg;
    cfg.tau = 1.0;
    const auto table = embed_tree(tree, cfg);

    REQUIRE(table.size() == tree.size());
    for (const auto& p : table.points) CHECK(norm_sq(p.coords) < 1.0);

    const auto rep = check_embedding(table, tree, cfg);
    CHECK(rep.edges == tree.size() - 1);
    CHECK(rep.max_parent_child_err <= 1e-9);
    CHECK(rep.min_sibling_separation > 1e-6);

    const auto again = embed_tree(tree, cfg);
    CHECK(embedding_to_json(again) == embedding_to_json(table));
}

TEST_CASE("norm monotonicity holds at a compatible tau and branching") {
    // tau=1 with branching 8 folds children back toward the origin; a larger
    // edge length with branching 4 keeps every child strictly farther out.
    const auto tree = default_tree(7, 2000, 4);
    EmbedConfig cfg;
    cfg.tau = 2.25;
    const auto table = embed_tree(tree, cfg);
    const auto rep = check_embedding(table, tree, cfg);
    CHECK(rep.norm_monotone);
    CHECK(rep.norm_violations == 0);
    CHECK(rep.max_parent_child_err <= 1e-9);
}

TEST_CASE("check_embedding reports violations instead of hiding them") {
    const auto tree = default_tree(7, 500, 8);
    EmbedConfig cfg;
    cfg.tau = 0.01;  // deliberately degenerate
    const auto table = embed_tree(tree, cfg);
    const auto rep = check_embedding(table, tree, cfg);
    CHECK_FALSE(rep.norm_monotone);
    CHECK(rep.norm_violations > 0);
}

TEST_CASE("malformed embedding json is rejected") {
    CHECK_THROWS(embedding_from_json("[]"));
    CHECK_THROWS(embedding_from_json(R"({"tau":1.0,"points":[{"id":7,"z":[0,0]}]})"));
}

TEST_CASE("embedding json roundtrip") {
    const auto tree = default_tree(3, 200, 8);
    EmbedConfig cfg;
    cfg.tau = 1.5;
    const auto table = embed_tree(tree, cfg);
    const auto back = embedding_from_json(embedding_to_json(table));
    CHECK(back.tau == table.tau);
    CHECK(back.ball.curvature == table.ball.curvature);
    REQUIRE(back.size() == table.size());
    for (int i = 0; i < table.size(); ++i) CHECK(back.at(i) == table.at(i));
}

TEST_SUITE_END();
