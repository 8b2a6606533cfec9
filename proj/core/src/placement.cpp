#include "gsfc/placement.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gsfc::mapper {

int UnitPlacement::row_of(KernelId k) const {
    for (const auto& [kernel, row] : tiles)
        if (kernel == k) return row;
    return -1;
}

int Placement::tiles_used() const {
    int total = 0;
    for (const UnitPlacement& u : units) total += static_cast<int>(u.tiles.size());
    return total;
}

int Placement::max_edge_span() const {
    int span = 0;
    if (units.empty()) return span;
    const UnitPlacement& u = units.front();  // all units are identical stacks
    for (const TaskEdge& e : graph.edges) {
        if (e.from < 0 || e.to < 0) continue;
        const int ra = u.tiles[static_cast<std::size_t>(e.from)].second;
        const int rb = u.tiles[static_cast<std::size_t>(e.to)].second;
        span = std::max(span, std::abs(ra - rb));
    }
    return span;
}

Placement place(const TaskGraph& graph, int n_units, const arch::MeshConfig& mesh) {
    if (n_units < 1) throw CapacityError("place: n_units must be >= 1");
    if (n_units > mesh.cols)
        throw CapacityError("place: " + std::to_string(n_units) + " units exceed " +
                            std::to_string(mesh.cols) + " mesh columns");
    const int height = static_cast<int>(graph.nodes.size());
    if (height > mesh.rows - 1)
        throw HeightError("place: graph height " + std::to_string(height) +
                          " exceeds " + std::to_string(mesh.rows - 1) +
                          " usable tiles per column (one tile stays free)");

    Placement p;
    p.graph = graph;
    p.mesh = mesh;
    p.units.reserve(static_cast<std::size_t>(n_units));
    for (int u = 0; u < n_units; ++u) {
        UnitPlacement unit;
        unit.column = u;
        for (int i = 0; i < height; ++i)
            unit.tiles.emplace_back(graph.nodes[static_cast<std::size_t>(i)].kernel, i);
        p.units.push_back(std::move(unit));
    }
    return p;
}

PlioReport validate_plio(const Placement& placement, int ports_per_column) {
    PlioReport report;
    report.ports_per_column_budget = ports_per_column;
    for (const UnitPlacement& u : placement.units) {
        const int used = u.plio_in + u.plio_out;
        report.per_column_usage.push_back(used);
        report.total_ports_used += used;
        if (used > ports_per_column) {
            report.pass = false;
            report.violating_columns.push_back(u.column);
        }
    }
    return report;
}

std::string placement_table(const Placement& placement) {
    std::ostringstream out;
    out << "units: " << placement.units.size() << "  tiles used: " << placement.tiles_used()
        << "  mesh: " << placement.mesh.cols << "x" << placement.mesh.rows << "\n";
    out << "column  row  kernel\n";
    for (const UnitPlacement& u : placement.units) {
        for (const auto& [kernel, row] : u.tiles) {
            char line[64];
            std::snprintf(line, sizeof(line), "%6d  %3d  %s\n", u.column, row,
                          std::string(kernel_name(kernel)).c_str());
            out << line;
        }
    }
    return out.str();
}

}  // namespace gsfc::mapper
