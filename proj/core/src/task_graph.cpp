#include "gsfc/task_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace gsfc::mapper {

int TaskGraph::node_index(KernelId k) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].kernel == k) return static_cast<int>(i);
    return -1;
}

std::int64_t TaskGraph::in_bytes(KernelId k) const {
    const int idx = node_index(k);
    std::int64_t total = 0;
    for (const TaskEdge& e : edges)
        if (e.to == idx) total += e.bytes_per_gaussian;
    return total;
}

std::int64_t TaskGraph::sink_bytes_per_gaussian() const {
    std::int64_t total = 0;
    for (const TaskEdge& e : edges)
        if (e.to == kSinkNode) total += e.bytes_per_gaussian;
    return total;
}

std::int64_t TaskGraph::source_bytes_per_gaussian() const {
    // The source reads whole records and fans fields out to the kernels.
    return 236;
}

bool TaskGraph::is_acyclic() const {
    try {
        (void)topological_order();
        return true;
    } catch (const std::logic_error&) {
        return false;
    }
}

std::vector<int> TaskGraph::topological_order() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (const TaskEdge& e : edges)
        if (e.from >= 0 && e.to >= 0) ++indegree[static_cast<std::size_t>(e.to)];

    std::vector<int> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[static_cast<std::size_t>(i)] == 0) ready.push_back(i);

    std::vector<int> order;
    while (!ready.empty()) {
        // Lowest index first keeps the order deterministic.
        std::sort(ready.begin(), ready.end(), std::greater<int>());
        const int v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (const TaskEdge& e : edges) {
            if (e.from == v && e.to >= 0) {
                if (--indegree[static_cast<std::size_t>(e.to)] == 0) ready.push_back(e.to);
            }
        }
    }
    if (static_cast<int>(order.size()) != n) throw std::logic_error("task graph has a cycle");
    return order;
}

bool TaskGraph::all_reachable_from_source() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    for (const TaskEdge& e : edges) {
        if (e.from == kSourceNode && e.to >= 0 && !seen[static_cast<std::size_t>(e.to)]) {
            seen[static_cast<std::size_t>(e.to)] = true;
            stack.push_back(e.to);
        }
    }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const TaskEdge& e : edges) {
            if (e.from == v && e.to >= 0 && !seen[static_cast<std::size_t>(e.to)]) {
                seen[static_cast<std::size_t>(e.to)] = true;
                stack.push_back(e.to);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

TaskGraph build_task_graph(bool partitioned) {
    TaskGraph g;
    if (!partitioned) {
        g.kind = GraphKind::naive5;
        g.nodes = {{KernelId::projection},
                   {KernelId::cov3d},
                   {KernelId::cov2d},
                   {KernelId::cov2d_inv},
                   {KernelId::color}};
        const int proj = 0, cov3 = 1, cov2 = 2, inv = 3, col = 4;
        g.edges = {
            {kSourceNode, proj, 12, "position"},
            {kSourceNode, cov3, 28, "rotation+scale"},
            {kSourceNode, col, 204, "position+sh"},
            {proj, cov2, 12, "camera-space point"},  // naive cov2D derives J itself
            {cov3, cov2, 24, "3D covariance (upper triangular)"},
            {cov2, inv, 12, "2D covariance (a,b,c)"},
            {proj, kSinkNode, 12, "screen position + depth"},
            {inv, kSinkNode, 28, "2D covariance + conic + det"},
            {col, kSinkNode, 12, "color"},
        };
        return g;
    }

    g.kind = GraphKind::partitioned7;
    g.nodes = {{KernelId::projection}, {KernelId::jacobian}, {KernelId::cov3d},
               {KernelId::cov2d},      {KernelId::cov2d_inv}, {KernelId::dir_vec},
               {KernelId::color}};
    const int proj = 0, jac = 1, cov3 = 2, cov2 = 3, inv = 4, dir = 5, col = 6;
    g.edges = {
        {kSourceNode, proj, 12, "position"},
        {kSourceNode, cov3, 28, "rotation+scale"},
        {kSourceNode, dir, 12, "position"},
        {kSourceNode, col, 192, "sh coefficients"},
        {proj, jac, 12, "camera-space point"},
        {jac, cov2, 24, "Jacobian"},  // cov2D builds K = J * R_cw internally
        {cov3, cov2, 24, "3D covariance (upper triangular)"},
        {cov2, inv, 12, "2D covariance (a,b,c)"},
        {dir, col, 64, "SH basis"},
        {proj, kSinkNode, 12, "screen position + depth"},
        {inv, kSinkNode, 28, "2D covariance + conic + det"},
        {col, kSinkNode, 12, "color"},
    };
    return g;
}

std::vector<KernelId> kernels_for(GraphKind kind) {
    if (kind == GraphKind::naive5)
        return {KernelId::projection, KernelId::cov3d, KernelId::cov2d, KernelId::cov2d_inv,
                KernelId::color};
    return {KernelId::projection, KernelId::jacobian, KernelId::cov3d, KernelId::cov2d,
            KernelId::cov2d_inv, KernelId::dir_vec,   KernelId::color};
}

}  // namespace gsfc::mapper
