#pragma once

// Coarse-to-fine design tree: a virtual root whose children are the
// single-type coarsest designs, then breadth-first seeded refinement where
// each child re-samples the sub-components of exactly one parent component.

#include <cstdint>
#include <string>
#include <vector>

#include "herd/clustering.hpp"
#include "herd/design.hpp"

namespace herd {

struct TreeBuildConfig {
    int max_nodes = 20000;
    int max_children = 8;
    uint64_t seed = 0;
    // Cell types available to the sampler. Root children take every non-Empty
    // entry; refinement draws uniformly over the whole set.
    std::vector<CellType> type_set = {CellType::Empty, CellType::Rigid, CellType::Soft,
                                      CellType::HorizontalActuator, CellType::VerticalActuator};

    void validate() const;
};

struct TreeNode {
    int id = 0;
    int parent = -1;              // -1 for the virtual root
    int level = 0;                // 0 = virtual root; level L uses stack level L-1
    std::vector<CellType> types;  // component types; empty for the root
    std::vector<int> children;
    DesignGrid grid;              // rendered design; empty cells vector for the root

    bool is_root() const { return parent == -1; }
};

class DesignTree {
public:
    DesignTree() = default;
    DesignTree(PartitionStack stack, std::vector<TreeNode> nodes);

    const PartitionStack& stack() const { return stack_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(int id) const;
    int root_id() const { return 0; }
    int size() const { return static_cast<int>(nodes_.size()); }
    int depth() const;  // max node level

private:
    PartitionStack stack_;
    std::vector<TreeNode> nodes_;
};

// Breadth-first generation under the node cap. Deterministic for a fixed
// config. Children ids are assigned in generation order, so ids are BFS-ordered.
DesignTree build_tree(const PartitionStack& stack, const TreeBuildConfig& cfg);

// k of the node's granularity level (virtual root -> 0). Throws on unknown id.
int node_granularity(const DesignTree& tree, int id);

// JSON persistence: {"levels":[...],"shape":[r,c],"partitions":[[...]...],
//                    "nodes":[{"id","parent","level","types":[...]},...]}.
// Grids are re-rendered from the partitions on load, so they are not stored.
std::string tree_to_json(const DesignTree& tree);
DesignTree tree_from_json(const std::string& text);
void save_tree(const DesignTree& tree, const std::string& path);
DesignTree load_tree(const std::string& path);

}  // namespace herd
