#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "gsfc/kernel_id.hpp"
#include "gsfc/lane_vector.hpp"

namespace gsfc::arch {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tile-mesh geometry and per-tile capacities. Defaults describe the reference
// device: a 50x8 mesh of VLIW/SIMD tiles at 1.25 GHz with 32 KB of local data
// memory and 16 KB of instruction memory each.
struct MeshConfig {
    int rows = 8;
    int cols = 50;
    double clock_hz = 1.25e9;
    std::int64_t local_mem_bytes = 32 * 1024;
    std::int64_t instr_mem_bytes = 16 * 1024;
};

enum class InterfaceKind { window, stream };

// Inter-tile communication parameters. Window: direct access to a neighboring
// tile's memory through two 256-bit load units and one 256-bit store unit per
// cycle. Stream: FIFO-based point-to-point links at 32 bits per cycle (the
// 128-bits-every-4-cycles burst mode averages the same sustained rate).
struct InterfaceSpec {
    InterfaceKind kind = InterfaceKind::window;
    int window_load_units = 2;
    int window_load_bits = 256;
    int window_store_units = 1;
    int window_store_bits = 256;
    int stream_bits_per_cycle = 32;
    int stream_ports_in = 2;
    int stream_ports_out = 2;
    // Event-model FIFO depth, in payload slots per edge (the hardware FIFOs are
    // 4 words deep; one slot here holds one Gaussian's message on that edge).
    int fifo_depth = 4;
};

// Boundary ports between the tile array and the surrounding fabric.
// external_cap_bytes_per_sec optionally throttles the whole pipeline to an
// externally measured bandwidth (e.g. a host-side memory path).
struct PlioSpec {
    double array_to_fabric_bytes_per_sec = 1.0e12;
    double fabric_to_array_bytes_per_sec = 1.3e12;
    std::optional<double> external_cap_bytes_per_sec;
};

struct KernelCost {
    double avg = 0.0;
    double min = 0.0;
    double max = 0.0;
};

enum class ProfileSource { calibrated, analytic };

enum class Method { naive, stream, window };

constexpr std::string_view method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::stream: return "stream";
        case Method::window: return "window";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name);

// Per-kernel cycles to process one Gaussian.
struct KernelCostProfile {
    ProfileSource source = ProfileSource::calibrated;
    std::map<KernelId, KernelCost> cost;

    bool has(KernelId k) const { return cost.count(k) != 0; }
    const KernelCost& at(KernelId k) const;
    // Kernel with the highest average cost.
    KernelId bottleneck() const;
};

// The shipped measured profiles: per-kernel (avg, min, max) cycles of the three
// implementation methods. Naive covers the 5-kernel pipeline; stream and window
// cover the partitioned 7-kernel pipeline.
KernelCostProfile calibrated_profile(Method method);

// Cycle estimate from instrumented op counts: per kernel,
//   cycles = scalar_issue_slots + ceil(lane_ops / lanes_per_mac) + overhead_cycles
// clamped to at least 1. A scalar multiply-accumulate occupies two issue slots
// (the scalar unit has no fused multiply-add); vector MACs occupy one lane op.
// Throws ConfigError when a required kernel is missing from the counts.
KernelCostProfile analytic_profile(const std::map<KernelId, OpCounts>& op_counts,
                                   std::span<const KernelId> required_kernels,
                                   int lanes_per_mac = 8, double overhead_cycles = 20.0);

// Cycles to move `bytes` across one hop of the given interface. Window hops
// charge the slower of the load and store legs; streams charge one cycle per
// 32-bit word.
std::int64_t transfer_cycles(std::int64_t bytes, const InterfaceSpec& iface);
std::int64_t window_load_cycles(std::int64_t bytes, const InterfaceSpec& iface);
std::int64_t window_store_cycles(std::int64_t bytes, const InterfaceSpec& iface);

// Multiplicative efficiency loss beyond the saturation unit count, standing in
// for interconnect stalls: factor(n) = 1 for n <= saturation_units, otherwise
// 1 / (1 + excess_stall_fraction * (n - saturation_units)).
struct ContentionModel {
    int saturation_units = 25;
    // Calibrated once against the shipped profiles so that the default
    // window-50 / naive-1 speedup lands on the ~226x reference point.
    double excess_stall_fraction = 0.00268;

    double factor(int n_units) const;
};

// Human-readable key/value serialization ("<kernel>.avg = <cycles>" lines).
void save_profile(const KernelCostProfile& profile, std::ostream& out);
void save_profile_file(const KernelCostProfile& profile, const std::string& path);
KernelCostProfile load_profile(std::istream& in);
KernelCostProfile load_profile_file(const std::string& path);

}  // namespace gsfc::arch
