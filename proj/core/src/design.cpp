#include "herd/design.hpp"

#include <array>
#include <nlohmann/json.hpp>

namespace herd {

namespace {
constexpr std::array<char, kNumCellTypes> kCodes = {'E', 'R', 'S', 'H', 'V'};
}

char cell_code(CellType t) { return kCodes[static_cast<int>(t)]; }

CellType cell_from_code(char c) {
    for (int i = 0; i < kNumCellTypes; ++i)
        if (kCodes[i] == c) return static_cast<CellType>(i);
    throw std::invalid_argument(std::string("unknown cell code '") + c + "'");
}

void GridShape::validate() const {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("GridShape: rows and cols must be positive");
}

void Partition::validate(int cell_count) const {
    if (k < 1) throw std::invalid_argument("Partition: k must be positive");
    if (static_cast<int>(assignment.size()) != cell_count)
        throw std::invalid_argument("Partition: assignment must cover every cell");
    std::vector<int> seen(k, 0);
    for (int id : assignment) {
        if (id < 0 || id >= k) throw std::invalid_argument("Partition: component id out of range");
        seen[id]++;
    }
    for (int i = 0; i < k; ++i)
        if (seen[i] == 0)
            throw std::invalid_argument("Partition: component " + std::to_string(i) + " owns no cell");
}

PartitionStack::PartitionStack(GridShape shape, std::vector<Partition> levels)
    : shape_(shape), levels_(std::move(levels)) {
    shape_.validate();
    if (levels_.empty()) throw std::invalid_argument("PartitionStack: no levels");
    const int n = shape_.cell_count();
    int prev_k = 0;
    for (const auto& p : levels_) {
        p.validate(n);
        if (p.k <= prev_k)
            throw std::invalid_argument("PartitionStack: levels must have strictly increasing k");
        prev_k = p.k;
    }
    if (levels_.back().k != n)
        throw std::invalid_argument("PartitionStack: finest level must have one component per cell");

    // Nestedness: walking fine -> coarse, the induced component-id map must be
    // a function (every fine component lands in exactly one coarse component).
    for (size_t li = 0; li + 1 < levels_.size(); ++li) {
        const Partition& coarse = levels_[li];
        const Partition& fine = levels_[li + 1];
        std::vector<int> fine_to_coarse(fine.k, -1);
        for (int cell = 0; cell < n; ++cell) {
            int& m = fine_to_coarse[fine.assignment[cell]];
            if (m == -1) {
                m = coarse.assignment[cell];
            } else if (m != coarse.assignment[cell]) {
                throw std::invalid_argument("PartitionStack: levels are not nested");
            }
        }
    }
}

DesignGrid render(const ComponentAssignment& assign, const PartitionStack& stack) {
    if (assign.level < 0 || assign.level >= stack.num_levels())
        throw std::out_of_range("render: level out of range");
    const Partition& p = stack.level(assign.level);
    if (static_cast<int>(assign.types.size()) != p.k)
        throw std::invalid_argument("render: types must cover every component");

    DesignGrid out;
    out.shape = stack.shape();
    out.cells.resize(stack.shape().cell_count());
    for (size_t cell = 0; cell < out.cells.size(); ++cell)
        out.cells[cell] = assign.types[p.assignment[cell]];
    return out;
}

std::vector<CellType> coarsen_types(const DesignGrid& design, const Partition& partition) {
    partition.validate(design.shape.cell_count());
    std::vector<std::array<int, kNumCellTypes>> counts(partition.k, std::array<int, kNumCellTypes>{});
    for (size_t cell = 0; cell < design.cells.size(); ++cell)
        counts[partition.assignment[cell]][static_cast<int>(design.cells[cell])]++;

    std::vector<CellType> out(partition.k);
    for (int comp = 0; comp < partition.k; ++comp) {
        int best = 0;
        for (int t = 1; t < kNumCellTypes; ++t)
            if (counts[comp][t] > counts[comp][best]) best = t;  // ties keep lower CellType
        out[comp] = static_cast<CellType>(best);
    }
    return out;
}

ComponentAssignment coarsen(const DesignGrid& design, const PartitionStack& stack, int level) {
    if (level < 0 || level >= stack.num_levels())
        throw std::out_of_range("coarsen: level out of range");
    if (design.shape != stack.shape())
        throw std::invalid_argument("coarsen: design shape does not match stack");
    return ComponentAssignment{level, coarsen_types(design, stack.level(level))};
}

ValidityReport validate(const DesignGrid& design) {
    design.shape.validate();
    const int rows = design.shape.rows, cols = design.shape.cols;
    if (static_cast<int>(design.cells.size()) != rows * cols)
        throw std::invalid_argument("validate: cell count does not match shape");

    ValidityReport rep;
    int nonempty = 0;
    for (CellType t : design.cells) {
        if (t != CellType::Empty) nonempty++;
        if (t == CellType::HorizontalActuator || t == CellType::VerticalActuator)
            rep.has_actuator = true;
    }
    if (nonempty == 0) return rep;  // connected=false, valid=false

    // Flood fill from the first non-Empty cell over the 4-neighborhood.
    std::vector<char> seen(design.cells.size(), 0);
    std::vector<int> stack;
    for (size_t i = 0; i < design.cells.size(); ++i) {
        if (design.cells[i] != CellType::Empty) {
            stack.push_back(static_cast<int>(i));
            seen[i] = 1;
            break;
        }
    }
    int reached = 0;
    while (!stack.empty()) {
        int cell = stack.back();
        stack.pop_back();
        reached++;
        const int r = cell / cols, c = cell % cols;
        const int nbr[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (auto [nr, nc] : nbr) {
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
            int ni = nr * cols + nc;
            if (!seen[ni] && design.cells[ni] != CellType::Empty) {
                seen[ni] = 1;
                stack.push_back(ni);
            }
        }
    }
    rep.connected = (reached == nonempty);
    rep.valid = rep.connected && rep.has_actuator;
    return rep;
}

std::string serialize(const DesignGrid& design) {
    std::string out;
    out.reserve(design.cells.size() + design.shape.rows);
    for (int r = 0; r < design.shape.rows; ++r) {
        if (r > 0) out.push_back('\n');
        for (int c = 0; c < design.shape.cols; ++c) out.push_back(cell_code(design.at(r, c)));
    }
    return out;
}

DesignGrid parse_design(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    lines.push_back(cur);
    // Tolerate one trailing newline (common when read from files).
    if (lines.size() > 1 && lines.back().empty()) lines.pop_back();

    if (lines.empty() || lines[0].empty()) throw ParseError("empty design text", 1, 1);

    DesignGrid out;
    out.shape.rows = static_cast<int>(lines.size());
    out.shape.cols = static_cast<int>(lines[0].size());
    out.cells.reserve(lines.size() * lines[0].size());
    for (size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != lines[0].size())
            throw ParseError("ragged row: expected " + std::to_string(lines[0].size()) +
                                 " columns, got " + std::to_string(lines[r].size()),
                             static_cast<int>(r + 1), static_cast<int>(lines[r].size() + 1));
        for (size_t c = 0; c < lines[r].size(); ++c) {
            try {
                out.cells.push_back(cell_from_code(lines[r][c]));
            } catch (const std::invalid_argument&) {
                throw ParseError(std::string("bad cell code '") + lines[r][c] + "'",
                                 static_cast<int>(r + 1), static_cast<int>(c + 1));
            }
        }
    }
    return out;
}

std::string design_to_json(const DesignGrid& design) {
    std::string cells;
    cells.reserve(design.cells.size());
    for (CellType t : design.cells) cells.push_back(cell_code(t));
    nlohmann::json j;
    j["shape"] = {design.shape.rows, design.shape.cols};
    j["cells"] = cells;
    return j.dump();
}

DesignGrid design_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    DesignGrid out;
    out.shape.rows = j.at("shape").at(0).get<int>();
    out.shape.cols = j.at("shape").at(1).get<int>();
    out.shape.validate();
    const auto cells = j.at("cells").get<std::string>();
    if (static_cast<int>(cells.size()) != out.shape.cell_count())
        throw std::invalid_argument("design json: cells length does not match shape");
    out.cells.reserve(cells.size());
    for (char c : cells) out.cells.push_back(cell_from_code(c));
    return out;
}

}  // namespace herd
