#include <doctest.h>

#include <set>

#include "gsfc/placement.hpp"
#include "gsfc/task_graph.hpp"

using namespace gsfc;
using namespace gsfc::mapper;

TEST_SUITE_BEGIN("mapper");

TEST_CASE("task graph: 5 nodes unpartitioned, 7 partitioned") {
    CHECK(build_task_graph(false).nodes.size() == 5);
    const TaskGraph g = build_task_graph(true);
    CHECK(g.nodes.size() == 7);
    CHECK(g.node_index(KernelId::dir_vec) >= 0);
    CHECK(g.node_index(KernelId::jacobian) >= 0);
}

TEST_CASE("task graph: acyclic and fully reachable from the source") {
    for (bool partitioned : {false, true}) {
        const TaskGraph g = build_task_graph(partitioned);
        CHECK(g.is_acyclic());
        CHECK(g.all_reachable_from_source());
        CHECK(g.topological_order().size() == g.nodes.size());
    }
}

TEST_CASE("task graph: edge byte volumes follow the type widths") {
    const TaskGraph g = build_task_graph(true);
    CHECK(g.source_bytes_per_gaussian() == 236);

    // cov3D -> cov2D carries the six-float upper triangle.
    bool found_cov3d_edge = false;
    for (const TaskEdge& e : g.edges) {
        if (e.from == g.node_index(KernelId::cov3d) && e.to == g.node_index(KernelId::cov2d)) {
            CHECK(e.bytes_per_gaussian == 24);
            found_cov3d_edge = true;
        }
        if (e.from == g.node_index(KernelId::dir_vec)) CHECK(e.bytes_per_gaussian == 64);
    }
    CHECK(found_cov3d_edge);

    CHECK(g.in_bytes(KernelId::color) == 192 + 64);
    CHECK(g.in_bytes(KernelId::cov2d) == 24 + 24);
    CHECK(g.in_bytes(KernelId::projection) == 12);
    CHECK(g.sink_bytes_per_gaussian() == 12 + 28 + 12);
}

TEST_CASE("place: four units mirror the four-instance layout") {
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 4, arch::MeshConfig{});
    CHECK(p.units.size() == 4);
    CHECK(p.tiles_used() == 28);
}

TEST_CASE("place: 50 units use 350 tiles") {
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 50, arch::MeshConfig{});
    CHECK(p.tiles_used() == 350);
}

TEST_CASE("place: 51 units exceed the default mesh") {
    const TaskGraph g = build_task_graph(true);
    CHECK_THROWS_AS((void)place(g, 51, arch::MeshConfig{}), CapacityError);
}

TEST_CASE("place: graph taller than rows-1 is a height error") {
    const TaskGraph g = build_task_graph(true);
    arch::MeshConfig short_mesh;
    short_mesh.rows = 7;  // 7 kernels need 7 tiles but only 6 are usable
    CHECK_THROWS_AS((void)place(g, 1, short_mesh), HeightError);
}

TEST_CASE("place: deterministic, unique in-bounds tiles, one column per unit") {
    const TaskGraph g = build_task_graph(true);
    const arch::MeshConfig mesh;
    const Placement a = place(g, 8, mesh);
    const Placement b = place(g, 8, mesh);

    std::set<std::pair<int, int>> seen;
    std::set<int> columns;
    for (std::size_t u = 0; u < a.units.size(); ++u) {
        CHECK(a.units[u].column == b.units[u].column);
        columns.insert(a.units[u].column);
        for (std::size_t t = 0; t < a.units[u].tiles.size(); ++t) {
            CHECK(a.units[u].tiles[t] == b.units[u].tiles[t]);
            const auto [kernel, row] = a.units[u].tiles[t];
            (void)kernel;
            CHECK(row >= 0);
            CHECK(row < mesh.rows);
            CHECK(a.units[u].column < mesh.cols);
            CHECK(seen.insert({a.units[u].column, row}).second);  // no tile assigned twice
        }
    }
    CHECK(columns.size() == 8);  // column count used equals n_units
}

TEST_CASE("place: kernels stack within window reach") {
    // The chain hops are vertically adjacent by construction; the off-chain
    // Jacobian->cov2D edge spans two rows, which window mode still reaches
    // through the in-between tile's shared memory.
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 1, arch::MeshConfig{});
    CHECK(p.max_edge_span() <= 2);
    for (const TaskEdge& e : g.edges) {
        if (e.from < 0 || e.to < 0) continue;
        const int ra = p.units[0].tiles[static_cast<std::size_t>(e.from)].second;
        const int rb = p.units[0].tiles[static_cast<std::size_t>(e.to)].second;
        CHECK(std::abs(ra - rb) >= 1);
        CHECK(std::abs(ra - rb) <= 2);
    }
    // Consecutive chain rows are adjacent.
    for (std::size_t t = 1; t < p.units[0].tiles.size(); ++t)
        CHECK(p.units[0].tiles[t].second - p.units[0].tiles[t - 1].second == 1);
}

TEST_CASE("validate_plio: two ports per column fit exactly") {
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 50, arch::MeshConfig{});
    const PlioReport r = validate_plio(p, 2);
    CHECK(r.pass);
    CHECK(r.violating_columns.empty());
    CHECK(r.total_ports_used == 100);  // per-column usage sums to 2N
}

TEST_CASE("validate_plio: one port per column fails everywhere") {
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 50, arch::MeshConfig{});
    const PlioReport r = validate_plio(p, 1);
    CHECK_FALSE(r.pass);
    CHECK(r.violating_columns.size() == 50);
}

TEST_CASE("placement table is human readable") {
    const TaskGraph g = build_task_graph(true);
    const Placement p = place(g, 2, arch::MeshConfig{});
    const std::string table = placement_table(p);
    CHECK(table.find("projection") != std::string::npos);
    CHECK(table.find("color") != std::string::npos);
    CHECK(table.find("tiles used: 14") != std::string::npos);
}

TEST_SUITE_END();
