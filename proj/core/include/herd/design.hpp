#pragma once

// Cell-grid robot designs: the five cell types, rectangular grids, nested
// partitions of grid cells into components, rendering component assignments
// back to grids, structural validity, and the canonical text serialization
// used as cache key and wire format.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace herd {

enum class CellType : uint8_t {
    Empty = 0,
    Rigid = 1,
    Soft = 2,
    HorizontalActuator = 3,
    VerticalActuator = 4,
};

inline constexpr int kNumCellTypes = 5;

// Canonical one-letter codes, in CellType order: E R S H V.
char cell_code(CellType t);
CellType cell_from_code(char c);  // throws std::invalid_argument on bad code

// Fitness assigned to structurally invalid designs instead of calling an
// evaluator.
inline constexpr double kInvalidFitness = -1e6;

struct GridShape {
    int rows = 5;
    int cols = 5;

    int cell_count() const { return rows * cols; }
    bool operator==(const GridShape&) const = default;
    void validate() const;
};

struct DesignGrid {
    GridShape shape;
    std::vector<CellType> cells;  // row-major, rows*cols entries

    DesignGrid() = default;
    DesignGrid(GridShape s, std::vector<CellType> c) : shape(s), cells(std::move(c)) {}
    static DesignGrid filled(GridShape s, CellType t) {
        return DesignGrid(s, std::vector<CellType>(s.cell_count(), t));
    }

    CellType at(int r, int c) const { return cells[r * shape.cols + c]; }
    bool operator==(const DesignGrid&) const = default;
};

// One granularity level: a total assignment of cells to k components.
struct Partition {
    int k = 0;
    std::vector<int> assignment;  // cell index -> component id in [0, k)

    bool operator==(const Partition&) const = default;
    void validate(int cell_count) const;
};

// Ordered family of nested partitions, coarse to fine. The final level is
// always the singleton partition (k = rows*cols).
class PartitionStack {
public:
    PartitionStack() = default;
    // Validates sizes, strictly increasing k, final k = cell count, and
    // nestedness (each fine component lies inside exactly one coarse
    // component). Throws std::invalid_argument otherwise.
    PartitionStack(GridShape shape, std::vector<Partition> levels);

    const GridShape& shape() const { return shape_; }
    int num_levels() const { return static_cast<int>(levels_.size()); }
    const Partition& level(int i) const { return levels_.at(i); }
    const std::vector<Partition>& levels() const { return levels_; }

    bool operator==(const PartitionStack&) const = default;

private:
    GridShape shape_;
    std::vector<Partition> levels_;
};

// Component-type assignment at one granularity level.
struct ComponentAssignment {
    int level = 0;                 // index into the PartitionStack
    std::vector<CellType> types;   // component id -> type, k entries

    bool operator==(const ComponentAssignment&) const = default;
};

// Paint every cell with its component's type.
DesignGrid render(const ComponentAssignment& assign, const PartitionStack& stack);

// Majority vote per component; ties broken by CellType order E<R<S<H<V.
std::vector<CellType> coarsen_types(const DesignGrid& design, const Partition& partition);
ComponentAssignment coarsen(const DesignGrid& design, const PartitionStack& stack, int level);

struct ValidityReport {
    bool connected = false;     // all non-Empty cells form one 4-neighborhood component
    bool has_actuator = false;  // at least one H or V cell
    bool valid = false;         // connected && has_actuator && at least one non-Empty cell
};

ValidityReport validate(const DesignGrid& design);

struct ParseError : std::runtime_error {
    int line;    // 1-based
    int column;  // 1-based
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg), line(l), column(c) {}
};

// Canonical form: rows lines of cols code characters, '\n'-separated, no
// trailing newline. parse(serialize(g)) == g.
std::string serialize(const DesignGrid& design);
DesignGrid parse_design(const std::string& text);

// JSON object form {"shape":[r,c],"cells":"ERSHV..."} used in files and the
// evaluator protocol. Implemented in io to keep json out of this header.
std::string design_to_json(const DesignGrid& design);
DesignGrid design_from_json(const std::string& json_text);

}  // namespace herd
