#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsfc/arch.hpp"
#include "gsfc/task_graph.hpp"

namespace gsfc::mapper {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One feature-computation unit: a column with its kernels stacked bottom-up in
// dataflow order (row 0 is adjacent to the boundary ports).
struct UnitPlacement {
    int column = 0;
    std::vector<std::pair<KernelId, int>> tiles;  // (kernel, row), in stacking order
    int plio_in = 1;
    int plio_out = 1;

    int row_of(KernelId k) const;
};

struct Placement {
    TaskGraph graph;
    arch::MeshConfig mesh;
    std::vector<UnitPlacement> units;

    int tiles_used() const;
    // Largest row distance any inter-kernel edge spans within a column. 1 means
    // every edge connects vertically adjacent tiles; 2 is still within window
    // reach (the buffer lives in the in-between tile's memory).
    int max_edge_span() const;
};

// Places n_units copies of the graph, one column each, kernels stacked from the
// boundary-adjacent row upward in node order. Deterministic. Throws
// CapacityError when n_units exceeds the column count and HeightError when the
// graph does not fit in rows-1 tiles (one tile per column is kept free).
Placement place(const TaskGraph& graph, int n_units, const arch::MeshConfig& mesh);

struct PlioReport {
    bool pass = true;
    int ports_per_column_budget = 2;
    std::vector<int> per_column_usage;   // indexed by unit
    std::vector<int> violating_columns;  // column indices over budget
    int total_ports_used = 0;
};

// Checks each unit's boundary stream usage (1 in + 1 out by default) against
// the per-column port budget.
PlioReport validate_plio(const Placement& placement, int ports_per_column = 2);

// Human-readable column -> kernel table.
std::string placement_table(const Placement& placement);

}  // namespace gsfc::mapper
