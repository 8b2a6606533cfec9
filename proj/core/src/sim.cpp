#include "gsfc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gsfc::sim {

namespace {

struct StageModel {
    KernelId kernel{};
    double profile_avg = 0.0;
    double profile_min = 0.0;
    double profile_max = 0.0;
    std::int64_t transfer = 0;
    double service() const { return profile_avg + static_cast<double>(transfer); }
};

std::vector<StageModel> build_stages(const SimConfig& cfg, const mapper::TaskGraph& graph) {
    std::vector<StageModel> stages;
    stages.reserve(graph.nodes.size());
    for (const mapper::TaskNode& node : graph.nodes) {
        StageModel s;
        s.kernel = node.kernel;
        const arch::KernelCost& c = cfg.profile.at(node.kernel);
        s.profile_avg = c.avg;
        s.profile_min = c.min;
        s.profile_max = c.max;
        s.transfer =
            cfg.charge_transfer ? arch::transfer_cycles(graph.in_bytes(node.kernel), cfg.iface) : 0;
        stages.push_back(s);
    }
    return stages;
}

struct Scaled {
    double throughput = 0.0;
    double total_cycles = 0.0;
    double efficiency = 1.0;
    double contention = 1.0;
    bool capped = false;
};

// Multi-unit scaling shared by both models: n * single * contention, clipped by
// the boundary bandwidths (input on the fabric->array legs, output on the
// array->fabric legs) and the optional external cap.
Scaled scale_units(const SimConfig& cfg, const mapper::TaskGraph& graph, double single_tp) {
    Scaled out;
    out.contention = cfg.contention.factor(cfg.n_units);
    double tp = static_cast<double>(cfg.n_units) * single_tp * out.contention;

    const double in_bytes = static_cast<double>(graph.source_bytes_per_gaussian());
    const double out_bytes = static_cast<double>(graph.sink_bytes_per_gaussian());
    double cap = cfg.plio.fabric_to_array_bytes_per_sec;
    if (out_bytes > 0.0)
        cap = std::min(cap, cfg.plio.array_to_fabric_bytes_per_sec * in_bytes / out_bytes);
    if (cfg.plio.external_cap_bytes_per_sec)
        cap = std::min(cap, *cfg.plio.external_cap_bytes_per_sec);
    if (tp > cap) {
        tp = cap;
        out.capped = true;
    }

    out.throughput = tp;
    out.total_cycles = static_cast<double>(cfg.n_gaussians) * in_bytes * cfg.mesh.clock_hz / tp;
    out.efficiency = tp / (static_cast<double>(cfg.n_units) * single_tp);
    return out;
}

void check_placement(const SimConfig& cfg, const mapper::Placement& placement) {
    if (static_cast<int>(placement.units.size()) != cfg.n_units)
        throw arch::ConfigError("simulate: placement has " +
                                std::to_string(placement.units.size()) + " units, config wants " +
                                std::to_string(cfg.n_units));
    if (cfg.n_gaussians < 1) throw arch::ConfigError("simulate: n_gaussians must be >= 1");
}

}  // namespace

SimReport simulate_analytic(const SimConfig& cfg, const mapper::Placement& placement) {
    check_placement(cfg, placement);
    const mapper::TaskGraph& graph = placement.graph;
    const std::vector<StageModel> stages = build_stages(cfg, graph);

    double period = 0.0;
    double latency = 0.0;
    KernelId bottleneck = stages.front().kernel;
    for (const StageModel& s : stages) {
        latency += s.service();
        if (s.service() > period) {
            period = s.service();
            bottleneck = s.kernel;
        }
    }
    const double n = static_cast<double>(cfg.n_gaussians);
    const double single_total = cfg.pipelined ? (n - 1.0) * period + latency : n * latency;
    const double record = static_cast<double>(graph.source_bytes_per_gaussian());
    const double single_tp = n * record * cfg.mesh.clock_hz / single_total;

    SimReport report;
    report.mode = SimMode::analytic;
    report.n_units = cfg.n_units;
    report.n_gaussians = cfg.n_gaussians;
    report.single_unit_cycles_per_gaussian = cfg.pipelined ? period : latency;
    report.single_unit_total_cycles = single_total;
    report.bottleneck_kernel = bottleneck;

    const Scaled scaled = scale_units(cfg, graph, single_tp);
    report.throughput_bytes_per_sec = scaled.throughput;
    report.total_cycles = scaled.total_cycles;
    report.parallel_efficiency = scaled.efficiency;
    report.contention_factor = scaled.contention;
    report.plio_capped = scaled.capped;

    for (KernelId k : kKernelReportOrder) {
        for (const StageModel& s : stages) {
            if (s.kernel != k) continue;
            KernelStats st;
            st.kernel = k;
            st.profile_avg = s.profile_avg;
            st.profile_min = s.profile_min;
            st.profile_max = s.profile_max;
            st.transfer_cycles = static_cast<double>(s.transfer);
            st.service_cycles = s.service();
            report.kernels.push_back(st);
        }
    }
    return report;
}

namespace {

// One stage of the cycle-stepped chain.
struct EventStage {
    StageModel model;
    std::int64_t compute_fixed = 0;  // rounded avg when jitter is off

    enum class Phase { idle, computing, ready_to_push } phase = Phase::idle;
    std::int64_t phase_end = 0;
    std::int64_t start_cycle = 0;
    std::int64_t queued = 0;  // items waiting in this stage's input FIFO

    std::int64_t completions = 0;
    std::int64_t busy = 0;
    std::int64_t stall = 0;
    std::int64_t dur_min = std::numeric_limits<std::int64_t>::max();
    std::int64_t dur_max = 0;
    std::int64_t dur_sum = 0;

    std::mt19937_64 rng;

    std::int64_t draw_compute(bool jitter) {
        if (!jitter || model.profile_min == model.profile_max) return compute_fixed;
        const auto lo = static_cast<std::int64_t>(std::llround(model.profile_min));
        const auto hi = static_cast<std::int64_t>(std::llround(model.profile_max));
        // Plain modulo keeps the draw identical across standard libraries.
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

struct ChainResult {
    std::int64_t total_cycles = 0;
    std::vector<EventStage> stages;
};

ChainResult run_chain(const SimConfig& cfg, const std::vector<StageModel>& models) {
    ChainResult result;
    result.stages.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        EventStage st;
        st.model = models[i];
        st.compute_fixed = static_cast<std::int64_t>(std::llround(models[i].profile_avg));
        st.rng.seed(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
        result.stages.push_back(std::move(st));
    }

    std::vector<EventStage>& stages = result.stages;
    const int n_stages = static_cast<int>(stages.size());
    const std::int64_t fifo_cap = std::max(1, cfg.iface.fifo_depth);
    const std::int64_t n = cfg.n_gaussians;

    std::int64_t injected = 0;
    std::int64_t delivered = 0;
    std::int64_t in_flight = 0;
    std::int64_t t = 0;
    const std::int64_t guard =
        cfg.n_gaussians * (static_cast<std::int64_t>(1) << 22);  // runaway guard

    while (delivered < n) {
        // Deliveries, sink end first so a push sees this cycle's freed space.
        for (int k = n_stages - 1; k >= 0; --k) {
            EventStage& st = stages[static_cast<std::size_t>(k)];
            if (st.phase == EventStage::Phase::computing && st.phase_end == t)
                st.phase = EventStage::Phase::ready_to_push;
            if (st.phase == EventStage::Phase::ready_to_push) {
                const bool is_last = (k == n_stages - 1);
                if (is_last || stages[static_cast<std::size_t>(k + 1)].queued < fifo_cap) {
                    if (is_last) {
                        ++delivered;
                        --in_flight;
                    } else {
                        ++stages[static_cast<std::size_t>(k + 1)].queued;
                    }
                    const std::int64_t dur = t - st.start_cycle;
                    ++st.completions;
                    st.dur_sum += dur;
                    st.dur_min = std::min(st.dur_min, dur);
                    st.dur_max = std::max(st.dur_max, dur);
                    st.phase = EventStage::Phase::idle;
                } else {
                    ++st.stall;  // blocked on a full downstream FIFO
                }
            }
        }

        // Source injection (before starts, so stage 0 can begin this cycle).
        if (injected < n && stages[0].queued < fifo_cap && (cfg.pipelined || in_flight == 0)) {
            ++stages[0].queued;
            ++injected;
            ++in_flight;
        }

        // Starts.
        for (int k = 0; k < n_stages; ++k) {
            EventStage& st = stages[static_cast<std::size_t>(k)];
            if (st.phase != EventStage::Phase::idle) continue;
            if (st.queued > 0) {
                --st.queued;
                st.start_cycle = t;
                const std::int64_t occ = st.model.transfer + st.draw_compute(cfg.jitter);
                st.phase_end = t + std::max<std::int64_t>(occ, 1);
                st.busy += std::max<std::int64_t>(occ, 1);
                st.phase = EventStage::Phase::computing;
            } else if (st.completions < n) {
                ++st.stall;  // starved: upstream has not produced yet
            }
        }

        ++t;
        if (t > guard) throw arch::ConfigError("event simulation failed to converge");
    }

    result.total_cycles = t - 1;  // cycle of the last sink delivery
    return result;
}

}  // namespace

SimReport simulate_event(const SimConfig& cfg, const mapper::Placement& placement) {
    check_placement(cfg, placement);
    const mapper::TaskGraph& graph = placement.graph;
    const std::vector<StageModel> models = build_stages(cfg, graph);

    const ChainResult chain = run_chain(cfg, models);

    const double n = static_cast<double>(cfg.n_gaussians);
    const double record = static_cast<double>(graph.source_bytes_per_gaussian());
    const double single_total = static_cast<double>(chain.total_cycles);
    const double single_tp = n * record * cfg.mesh.clock_hz / single_total;

    SimReport report;
    report.mode = SimMode::event;
    report.n_units = cfg.n_units;
    report.n_gaussians = cfg.n_gaussians;
    report.single_unit_total_cycles = single_total;

    double period = 0.0;
    KernelId bottleneck = models.front().kernel;
    for (const StageModel& s : models) {
        if (s.service() > period) {
            period = s.service();
            bottleneck = s.kernel;
        }
    }
    report.single_unit_cycles_per_gaussian = cfg.pipelined ? period : single_total / n;
    report.bottleneck_kernel = bottleneck;

    const Scaled scaled = scale_units(cfg, graph, single_tp);
    report.throughput_bytes_per_sec = scaled.throughput;
    report.total_cycles = scaled.total_cycles;
    report.parallel_efficiency = scaled.efficiency;
    report.contention_factor = scaled.contention;
    report.plio_capped = scaled.capped;

    for (KernelId k : kKernelReportOrder) {
        for (const EventStage& st : chain.stages) {
            if (st.model.kernel != k) continue;
            KernelStats out;
            out.kernel = k;
            out.profile_avg = st.model.profile_avg;
            out.profile_min = st.model.profile_min;
            out.profile_max = st.model.profile_max;
            out.transfer_cycles = static_cast<double>(st.model.transfer);
            out.service_cycles = st.model.service();
            out.busy_cycles = st.busy;
            out.stall_cycles = st.stall;
            if (st.completions > 0) {
                out.measured_avg =
                    static_cast<double>(st.dur_sum) / static_cast<double>(st.completions);
                out.measured_min = static_cast<double>(st.dur_min);
                out.measured_max = static_cast<double>(st.dur_max);
            }
            report.kernels.push_back(out);
        }
    }
    return report;
}

SimReport simulate(const SimConfig& cfg, const mapper::Placement& placement) {
    return cfg.mode == SimMode::analytic ? simulate_analytic(cfg, placement)
                                         : simulate_event(cfg, placement);
}

MethodSetup setup_method(const SimConfig& base, arch::Method method, int units) {
    MethodSetup setup;
    setup.graph = mapper::build_task_graph(method != arch::Method::naive);
    setup.cfg = base;
    setup.cfg.n_units = units;
    setup.cfg.profile = arch::calibrated_profile(method);
    // The naive baseline maps onto the window interface: its measured per-kernel
    // spreads are tight like the window rows, not stream-like.
    setup.cfg.iface.kind =
        method == arch::Method::stream ? arch::InterfaceKind::stream : arch::InterfaceKind::window;
    return setup;
}

std::vector<SweepCell> sweep(const SimConfig& base, std::span<const arch::Method> methods,
                             std::span<const int> unit_counts) {
    // Naive-1 baseline for the speedup columns.
    const MethodSetup naive = setup_method(base, arch::Method::naive, 1);
    const mapper::Placement naive_placement = mapper::place(naive.graph, 1, naive.cfg.mesh);
    const SimReport naive_analytic = simulate_analytic(naive.cfg, naive_placement);
    const SimReport naive_event = simulate_event(naive.cfg, naive_placement);

    std::vector<SweepCell> cells;
    for (arch::Method method : methods) {
        for (int units : unit_counts) {
            if (method != arch::Method::window && units != 1) continue;
            const MethodSetup setup = setup_method(base, method, units);
            const mapper::Placement placement = mapper::place(setup.graph, units, setup.cfg.mesh);
            SweepCell cell;
            cell.method = method;
            cell.units = units;
            cell.analytic = simulate_analytic(setup.cfg, placement);
            cell.event = simulate_event(setup.cfg, placement);
            cell.speedup_analytic =
                cell.analytic.throughput_bytes_per_sec / naive_analytic.throughput_bytes_per_sec;
            cell.speedup_event =
                cell.event.throughput_bytes_per_sec / naive_event.throughput_bytes_per_sec;
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace gsfc::sim
