#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsfc/kernel_id.hpp"

namespace gsfc::mapper {

enum class GraphKind { naive5, partitioned7 };

// Pseudo-node indices for edges crossing the array boundary.
inline constexpr int kSourceNode = -1;
inline constexpr int kSinkNode = -2;

struct TaskNode {
    KernelId kernel;
};

struct TaskEdge {
    int from;  // node index, or kSourceNode
    int to;    // node index, or kSinkNode
    std::int64_t bytes_per_gaussian;
    const char* payload;  // what travels on the edge
};

// Dataflow graph of the feature pipeline. Nodes are stored in the order the
// kernels are stacked within a mesh column (a valid topological order).
struct TaskGraph {
    GraphKind kind = GraphKind::partitioned7;
    std::vector<TaskNode> nodes;
    std::vector<TaskEdge> edges;

    int node_index(KernelId k) const;  // -1 when absent
    // Sum of bytes entering a kernel per Gaussian (source edges included).
    std::int64_t in_bytes(KernelId k) const;
    // Sum of bytes on edges into the sink, per Gaussian.
    std::int64_t sink_bytes_per_gaussian() const;
    // Bytes read from the boundary per Gaussian (the full input record).
    std::int64_t source_bytes_per_gaussian() const;

    bool is_acyclic() const;
    bool all_reachable_from_source() const;
    // Node indices in a valid topological order; throws std::logic_error on a cycle.
    std::vector<int> topological_order() const;
};

// The 5-kernel pipeline (projection, cov3D, cov2D, cov2D_inv, color), or the
// partitioned 7-kernel pipeline that additionally routes a Jacobian kernel into
// cov2D (which K-factorizes the projection) and a dir_vec kernel that hands the
// precomputed SH basis to color. Edge byte volumes come from the domain type
// widths and are annotated per edge.
TaskGraph build_task_graph(bool partitioned);

std::vector<KernelId> kernels_for(GraphKind kind);

}  // namespace gsfc::mapper
