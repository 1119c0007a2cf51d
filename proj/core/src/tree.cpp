#include "herd/tree.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace herd {

void TreeBuildConfig::validate() const {
    if (max_nodes < 1) throw std::invalid_argument("TreeBuildConfig: max_nodes must be positive");
    if (max_children < 1)
        throw std::invalid_argument("TreeBuildConfig: max_children must be positive");
    if (type_set.empty()) throw std::invalid_argument("TreeBuildConfig: type_set must be non-empty");
    std::set<CellType> uniq(type_set.begin(), type_set.end());
    if (uniq.size() != type_set.size())
        throw std::invalid_argument("TreeBuildConfig: duplicate entries in type_set");
    int non_empty = 0;
    for (CellType t : type_set)
        if (t != CellType::Empty) non_empty++;
    if (non_empty == 0)
        throw std::invalid_argument("TreeBuildConfig: type_set needs at least one non-Empty type");
    if (max_nodes < non_empty + 1)
        throw std::invalid_argument("TreeBuildConfig: max_nodes must cover the root and every coarsest design");
}

DesignTree::DesignTree(PartitionStack stack, std::vector<TreeNode> nodes)
    : stack_(std::move(stack)), nodes_(std::move(nodes)) {}

const TreeNode& DesignTree::node(int id) const {
    if (id < 0 || id >= size()) throw std::out_of_range("DesignTree: unknown node id");
    return nodes_[id];
}

int DesignTree::depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.level);
    return d;
}

namespace {

// Map each component of stack level `fine` to its parent component at level
// `fine-1` (levels are nested, so the map is well defined).
std::vector<int> fine_to_coarse(const PartitionStack& stack, int fine) {
    const Partition& f = stack.level(fine);
    const Partition& c = stack.level(fine - 1);
    std::vector<int> map(f.k, -1);
    for (size_t cell = 0; cell < f.assignment.size(); ++cell)
        map[f.assignment[cell]] = c.assignment[cell];
    return map;
}

}  // namespace

DesignTree build_tree(const PartitionStack& stack, const TreeBuildConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    std::vector<TreeNode> nodes;
    nodes.reserve(std::min(cfg.max_nodes, 1 << 16));

    TreeNode root;
    root.id = 0;
    root.parent = -1;
    root.level = 0;
    nodes.push_back(root);

    // Root children: every non-Empty type in the set, painted uniformly over
    // the coarsest level's components. All-Empty is excluded (never valid).
    const int coarsest_k = stack.level(0).k;
    for (CellType t : cfg.type_set) {
        if (t == CellType::Empty) continue;
        if (static_cast<int>(nodes.size()) >= cfg.max_nodes) break;
        TreeNode child;
        child.id = static_cast<int>(nodes.size());
        child.parent = 0;
        child.level = 1;
        child.types.assign(coarsest_k, t);
        child.grid = render(ComponentAssignment{0, child.types}, stack);
        nodes[0].children.push_back(child.id);
        nodes.push_back(std::move(child));
    }

    std::uniform_int_distribution<size_t> type_draw(0, cfg.type_set.size() - 1);

    // Breadth-first over node ids; ids are assigned in generation order.
    for (int qi = 1; qi < static_cast<int>(nodes.size()); ++qi) {
        if (static_cast<int>(nodes.size()) >= cfg.max_nodes) break;
        if (nodes[qi].level >= stack.num_levels()) continue;  // finest, no children

        const int parent_level = nodes[qi].level - 1;  // stack index of the node itself
        const int child_level = parent_level + 1;      // stack index of its children
        const std::vector<int> up = fine_to_coarse(stack, child_level);
        const Partition& fine_part = stack.level(child_level);
        const int parent_k = stack.level(parent_level).k;
        std::uniform_int_distribution<int> comp_draw(0, parent_k - 1);

        std::vector<DesignGrid> sibling_grids;
        const int budget = 10 * cfg.max_children;
        for (int attempt = 0;
             attempt < budget &&
             static_cast<int>(nodes[qi].children.size()) < cfg.max_children &&
             static_cast<int>(nodes.size()) < cfg.max_nodes;
             ++attempt) {
            const int chosen = comp_draw(rng);

            // Inherit every component's type through the nested map, then
            // re-sample the chosen component's sub-components.
            std::vector<CellType> types(fine_part.k);
            for (int fc = 0; fc < fine_part.k; ++fc) types[fc] = nodes[qi].types[up[fc]];
            for (int fc = 0; fc < fine_part.k; ++fc)
                if (up[fc] == chosen) types[fc] = cfg.type_set[type_draw(rng)];

            DesignGrid grid = render(ComponentAssignment{child_level, types}, stack);
            if (std::find(sibling_grids.begin(), sibling_grids.end(), grid) != sibling_grids.end())
                continue;  // duplicate sibling, re-draw

            TreeNode child;
            child.id = static_cast<int>(nodes.size());
            child.parent = qi;
            child.level = nodes[qi].level + 1;
            child.types = std::move(types);
            child.grid = grid;
            nodes[qi].children.push_back(child.id);
            sibling_grids.push_back(std::move(grid));
            nodes.push_back(std::move(child));
        }
    }

    return DesignTree(stack, std::move(nodes));
}

int node_granularity(const DesignTree& tree, int id) {
    const TreeNode& n = tree.node(id);
    if (n.level == 0) return 0;
    return tree.stack().level(n.level - 1).k;
}

std::string tree_to_json(const DesignTree& tree) {
    nlohmann::json j;
    auto& levels = j["levels"] = nlohmann::json::array();
    auto& parts = j["partitions"] = nlohmann::json::array();
    for (const auto& p : tree.stack().levels()) {
        levels.push_back(p.k);
        parts.push_back(p.assignment);
    }
    j["shape"] = {tree.stack().shape().rows, tree.stack().shape().cols};
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (const auto& n : tree.nodes()) {
        nlohmann::json jn;
        jn["id"] = n.id;
        jn["parent"] = n.parent;
        jn["level"] = n.level;
        auto& types = jn["types"] = nlohmann::json::array();
        for (CellType t : n.types) types.push_back(std::string(1, cell_code(t)));
        nodes.push_back(std::move(jn));
    }
    return j.dump();
}

DesignTree tree_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);

    GridShape shape;
    shape.rows = j.at("shape").at(0).get<int>();
    shape.cols = j.at("shape").at(1).get<int>();

    std::vector<Partition> levels;
    const auto& ks = j.at("levels");
    const auto& parts = j.at("partitions");
    if (ks.size() != parts.size())
        throw std::invalid_argument("tree json: levels/partitions size mismatch");
    for (size_t i = 0; i < ks.size(); ++i) {
        Partition p;
        p.k = ks[i].get<int>();
        p.assignment = parts[i].get<std::vector<int>>();
        levels.push_back(std::move(p));
    }
    PartitionStack stack(shape, std::move(levels));

    std::vector<TreeNode> nodes(j.at("nodes").size());
    for (const auto& jn : j.at("nodes")) {
        TreeNode n;
        n.id = jn.at("id").get<int>();
        n.parent = jn.at("parent").get<int>();
        n.level = jn.at("level").get<int>();
        for (const auto& t : jn.at("types"))
            n.types.push_back(cell_from_code(t.get<std::string>().at(0)));
        if (n.id < 0 || n.id >= static_cast<int>(nodes.size()))
            throw std::invalid_argument("tree json: node id out of range");
        nodes[n.id] = std::move(n);
    }
    for (auto& n : nodes) {
        if (n.parent >= 0) nodes[n.parent].children.push_back(n.id);
        if (n.level > 0) n.grid = render(ComponentAssignment{n.level - 1, n.types}, stack);
    }
    return DesignTree(std::move(stack), std::move(nodes));
}

void save_tree(const DesignTree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << tree_to_json(tree) << '\n';
}

DesignTree load_tree(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return tree_from_json(ss.str());
}

}  // namespace herd
