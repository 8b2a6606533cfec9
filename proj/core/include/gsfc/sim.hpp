#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsfc/arch.hpp"
#include "gsfc/placement.hpp"
#include "gsfc/task_graph.hpp"

namespace gsfc::sim {

enum class SimMode { analytic, event };

struct SimConfig {
    arch::MeshConfig mesh;
    arch::InterfaceSpec iface;
    arch::PlioSpec plio;
    arch::KernelCostProfile profile;
    arch::ContentionModel contention;
    std::int64_t n_gaussians = 100;
    int n_units = 1;
    SimMode mode = SimMode::analytic;
    std::uint64_t seed = 0;
    // When false, input transfer is not charged to stage service times.
    bool charge_transfer = true;
    // When false, one Gaussian traverses the whole chain before the next enters.
    bool pipelined = true;
    // Event mode: draw per-invocation compute cost uniformly from the profile's
    // [min, max] (seeded). Off by default for reproducibility.
    bool jitter = false;
};

struct KernelStats {
    KernelId kernel{};
    // Cost profile (compute cycles per Gaussian).
    double profile_avg = 0.0;
    double profile_min = 0.0;
    double profile_max = 0.0;
    // Input transfer charged to the stage, and the resulting service time.
    double transfer_cycles = 0.0;
    double service_cycles = 0.0;
    // Event-mode measurements (per-item duration from start of compute to
    // successful output push). Zero in analytic mode.
    double measured_avg = 0.0;
    double measured_min = 0.0;
    double measured_max = 0.0;
    std::int64_t busy_cycles = 0;
    std::int64_t stall_cycles = 0;
};

struct SimReport {
    SimMode mode = SimMode::analytic;
    int n_units = 1;
    std::int64_t n_gaussians = 0;
    // Headline metric: input-record bytes (236 per Gaussian) per second.
    double throughput_bytes_per_sec = 0.0;
    // Wall cycles for the whole workload; always satisfies
    // throughput = n_gaussians * 236 * clock_hz / total_cycles.
    double total_cycles = 0.0;
    // Steady-state cycles per Gaussian of one unit (bottleneck stage service).
    double single_unit_cycles_per_gaussian = 0.0;
    double single_unit_total_cycles = 0.0;
    std::vector<KernelStats> kernels;  // in report order
    KernelId bottleneck_kernel{};
    double parallel_efficiency = 1.0;
    double contention_factor = 1.0;
    bool plio_capped = false;
};

// Closed-form steady-state model: per-stage service = profile avg + input
// transfer; one unit's cycles/Gaussian is the bottleneck service; n units scale
// throughput by n * contention_factor, clipped by the boundary bandwidths and
// the optional external cap.
SimReport simulate_analytic(const SimConfig& cfg, const mapper::Placement& placement);

// Cycle-stepped simulation of one unit's kernel chain with a bounded FIFO on
// every hop: a kernel starts an item when its input is present and occupies the
// tile for (input transfer + compute) cycles, then pushes downstream, stalling
// while the next FIFO is full. Multi-unit runs replicate the measured unit
// (units are identical and independent) with the same contention and cap
// treatment as the analytic model. Deterministic given cfg.seed.
SimReport simulate_event(const SimConfig& cfg, const mapper::Placement& placement);

// Dispatch on cfg.mode.
SimReport simulate(const SimConfig& cfg, const mapper::Placement& placement);

// Applies a method's profile, interface kind, and task graph to a base config.
struct MethodSetup {
    mapper::TaskGraph graph;
    SimConfig cfg;
};
MethodSetup setup_method(const SimConfig& base, arch::Method method, int units);

struct SweepCell {
    arch::Method method = arch::Method::window;
    int units = 1;
    SimReport analytic;
    SimReport event;
    double speedup_analytic = 0.0;  // vs the naive single-unit baseline
    double speedup_event = 0.0;
};

// Cross product of methods and unit counts; naive and stream run only at one
// unit (parallel replication applies to the window mapping). Each cell carries
// both model outputs plus speedups against the naive-1 baseline.
std::vector<SweepCell> sweep(const SimConfig& base, std::span<const arch::Method> methods,
                             std::span<const int> unit_counts);

inline constexpr std::array<arch::Method, 3> kDefaultSweepMethods = {
    arch::Method::naive, arch::Method::stream, arch::Method::window};
inline constexpr std::array<int, 5> kDefaultSweepUnits = {1, 4, 8, 25, 50};

}  // namespace gsfc::sim
