#include "gsfc/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gsfc/dataset.hpp"
#include "gsfc/gaussian_file.hpp"
#include "gsfc/staged.hpp"

namespace gsfc::io {

using nlohmann::json;
using nlohmann::ordered_json;

const std::vector<ExperimentPreset>& shipped_presets() {
    static const std::vector<ExperimentPreset> presets = {
        {"naive-1", arch::Method::naive, {1}, arch::ProfileSource::calibrated, 100, 12345},
        {"stream-1", arch::Method::stream, {1}, arch::ProfileSource::calibrated, 100, 12345},
        {"window-1", arch::Method::window, {1}, arch::ProfileSource::calibrated, 100, 12345},
        {"window-4", arch::Method::window, {4}, arch::ProfileSource::calibrated, 100, 12345},
        {"window-8", arch::Method::window, {8}, arch::ProfileSource::calibrated, 100, 12345},
        {"window-25", arch::Method::window, {25}, arch::ProfileSource::calibrated, 100, 12345},
        {"window-50", arch::Method::window, {50}, arch::ProfileSource::calibrated, 100, 12345},
    };
    return presets;
}

const ExperimentPreset* find_preset(std::string_view name) {
    for (const ExperimentPreset& p : shipped_presets())
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

arch::KernelCostProfile profile_for(arch::Method method, arch::ProfileSource source,
                                    const std::optional<std::string>& profile_file,
                                    std::uint64_t seed) {
    if (profile_file) return arch::load_profile_file(*profile_file);
    if (source == arch::ProfileSource::calibrated) return arch::calibrated_profile(method);
    // Analytic: instrument one representative Gaussian through the staged kernels.
    const Gaussian g = generate(1, seed).front();
    const CameraParams cam = CameraParams::default_camera();
    const auto kind =
        method == arch::Method::naive ? mapper::GraphKind::naive5 : mapper::GraphKind::partitioned7;
    const auto counts = method == arch::Method::naive
                            ? staged::measure_kernel_ops_naive(g, cam)
                            : staged::measure_kernel_ops(g, cam);
    const auto kernels = mapper::kernels_for(kind);
    return arch::analytic_profile(counts, kernels);
}

sim::SimConfig base_config(const ExperimentPreset& preset, const ExperimentOptions& opts) {
    sim::SimConfig cfg;
    cfg.n_gaussians = opts.n_gaussians.value_or(preset.workload_size);
    cfg.seed = opts.seed.value_or(preset.seed);
    if (opts.fifo_depth) cfg.iface.fifo_depth = *opts.fifo_depth;
    if (opts.external_cap_bytes_per_sec)
        cfg.plio.external_cap_bytes_per_sec = *opts.external_cap_bytes_per_sec;
    cfg.charge_transfer = opts.charge_transfer;
    cfg.pipelined = opts.pipelined;
    cfg.jitter = opts.jitter;
    return cfg;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPreset& preset, const ExperimentOptions& opts) {
    ExperimentResult result;
    result.preset = preset;
    result.base_cfg = base_config(preset, opts);

    // Naive-1 baseline for the speedup columns; uses the preset's profile source
    // (a user-supplied profile file only applies to the preset's own method).
    sim::MethodSetup naive = sim::setup_method(result.base_cfg, arch::Method::naive, 1);
    naive.cfg.profile = profile_for(arch::Method::naive, preset.profile_source, std::nullopt,
                                    result.base_cfg.seed);
    const mapper::Placement naive_placement = mapper::place(naive.graph, 1, naive.cfg.mesh);
    const sim::SimReport naive_analytic = sim::simulate_analytic(naive.cfg, naive_placement);
    const sim::SimReport naive_event = sim::simulate_event(naive.cfg, naive_placement);

    for (int units : preset.unit_counts) {
        sim::MethodSetup setup = sim::setup_method(result.base_cfg, preset.method, units);
        setup.cfg.profile = profile_for(preset.method, preset.profile_source, opts.profile_file,
                                        result.base_cfg.seed);
        mapper::Placement placement;
        try {
            placement = mapper::place(setup.graph, units, setup.cfg.mesh);
        } catch (const mapper::CapacityError& e) {
            throw mapper::CapacityError("preset " + preset.name + ": " + e.what());
        } catch (const mapper::HeightError& e) {
            throw mapper::HeightError("preset " + preset.name + ": " + e.what());
        }

        sim::SweepCell cell;
        cell.method = preset.method;
        cell.units = units;
        cell.analytic = sim::simulate_analytic(setup.cfg, placement);
        cell.event = sim::simulate_event(setup.cfg, placement);
        cell.speedup_analytic =
            cell.analytic.throughput_bytes_per_sec / naive_analytic.throughput_bytes_per_sec;
        cell.speedup_event =
            cell.event.throughput_bytes_per_sec / naive_event.throughput_bytes_per_sec;
        result.cells.push_back(std::move(cell));
    }
    return result;
}

ExperimentResult run_default_sweep(const ExperimentOptions& opts) {
    ExperimentPreset grid;
    grid.name = "sweep";
    grid.method = arch::Method::window;  // placeholder; cells carry their own method
    ExperimentResult result;
    result.preset = grid;
    result.base_cfg = base_config(grid, opts);
    result.cells = sim::sweep(result.base_cfg, sim::kDefaultSweepMethods, sim::kDefaultSweepUnits);
    return result;
}

namespace {

ordered_json report_to_json(const sim::SimReport& r) {
    ordered_json j;
    j["mode"] = r.mode == sim::SimMode::analytic ? "analytic" : "event";
    j["throughput_bytes_per_sec"] = r.throughput_bytes_per_sec;
    j["throughput_mb_per_sec"] = r.throughput_bytes_per_sec / 1e6;
    j["total_cycles"] = r.total_cycles;
    j["single_unit_cycles_per_gaussian"] = r.single_unit_cycles_per_gaussian;
    j["single_unit_total_cycles"] = r.single_unit_total_cycles;
    j["bottleneck_kernel"] = std::string(kernel_name(r.bottleneck_kernel));
    j["parallel_efficiency"] = r.parallel_efficiency;
    j["contention_factor"] = r.contention_factor;
    j["plio_capped"] = r.plio_capped;
    j["kernels"] = ordered_json::array();
    for (const sim::KernelStats& k : r.kernels) {
        ordered_json kj;
        kj["name"] = std::string(kernel_name(k.kernel));
        kj["avg"] = k.profile_avg;
        kj["min"] = k.profile_min;
        kj["max"] = k.profile_max;
        kj["transfer_cycles"] = k.transfer_cycles;
        kj["service_cycles"] = k.service_cycles;
        kj["measured_avg"] = k.measured_avg;
        kj["measured_min"] = k.measured_min;
        kj["measured_max"] = k.measured_max;
        kj["busy_cycles"] = k.busy_cycles;
        kj["stall_cycles"] = k.stall_cycles;
        j["kernels"].push_back(kj);
    }
    return j;
}

ordered_json result_to_json(const ExperimentResult& result) {
    const sim::SimConfig& cfg = result.base_cfg;
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["preset"] = result.preset.name;
    doc["method"] = std::string(arch::method_name(result.preset.method));
    doc["profile_source"] =
        result.preset.profile_source == arch::ProfileSource::calibrated ? "calibrated" : "analytic";
    doc["workload"] = {{"n_gaussians", cfg.n_gaussians}, {"seed", cfg.seed}};

    ordered_json c;
    c["clock_hz"] = cfg.mesh.clock_hz;
    c["mesh_rows"] = cfg.mesh.rows;
    c["mesh_cols"] = cfg.mesh.cols;
    c["fifo_depth"] = cfg.iface.fifo_depth;
    c["pipelined"] = cfg.pipelined;
    c["charge_transfer"] = cfg.charge_transfer;
    c["jitter"] = cfg.jitter;
    if (cfg.plio.external_cap_bytes_per_sec)
        c["external_cap_bytes_per_sec"] = *cfg.plio.external_cap_bytes_per_sec;
    else
        c["external_cap_bytes_per_sec"] = nullptr;
    c["plio_array_to_fabric_bytes_per_sec"] = cfg.plio.array_to_fabric_bytes_per_sec;
    c["plio_fabric_to_array_bytes_per_sec"] = cfg.plio.fabric_to_array_bytes_per_sec;
    c["contention_saturation_units"] = cfg.contention.saturation_units;
    c["contention_excess_stall_fraction"] = cfg.contention.excess_stall_fraction;
    doc["config"] = c;

    doc["cells"] = ordered_json::array();
    for (const sim::SweepCell& cell : result.cells) {
        ordered_json cj;
        cj["method"] = std::string(arch::method_name(cell.method));
        cj["units"] = cell.units;
        cj["interface"] = cell.method == arch::Method::stream ? "stream" : "window";
        cj["analytic"] = report_to_json(cell.analytic);
        cj["event"] = report_to_json(cell.event);
        cj["speedup_vs_naive1_analytic"] = cell.speedup_analytic;
        cj["speedup_vs_naive1_event"] = cell.speedup_event;
        doc["cells"].push_back(cj);
    }
    return doc;
}

std::string fmt_number(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v.get<double>());
    return buf;
}

constexpr const char* kCsvHeader =
    "method,units,mode,row_type,kernel,avg_cycles,min_cycles,max_cycles,transfer_cycles,"
    "service_cycles,measured_avg,measured_min,measured_max,busy_cycles,stall_cycles,"
    "throughput_mb_per_sec,total_cycles,bottleneck_kernel,parallel_efficiency,"
    "contention_factor,plio_capped,speedup_vs_naive1";

void csv_rows_for_mode(std::ostream& out, const json& cell, const json& mode_report,
                       const json& speedup) {
    const std::string method = cell["method"].get<std::string>();
    const std::string units = fmt_number(cell["units"]);
    const std::string mode = mode_report["mode"].get<std::string>();
    for (const json& k : mode_report["kernels"]) {
        out << method << ',' << units << ',' << mode << ",kernel," << k["name"].get<std::string>()
            << ',' << fmt_number(k["avg"]) << ',' << fmt_number(k["min"]) << ','
            << fmt_number(k["max"]) << ',' << fmt_number(k["transfer_cycles"]) << ','
            << fmt_number(k["service_cycles"]) << ',' << fmt_number(k["measured_avg"]) << ','
            << fmt_number(k["measured_min"]) << ',' << fmt_number(k["measured_max"]) << ','
            << fmt_number(k["busy_cycles"]) << ',' << fmt_number(k["stall_cycles"])
            << ",,,,,,,\n";
    }
    out << method << ',' << units << ',' << mode << ",summary,,,,,,,,,,,,"
        << fmt_number(mode_report["throughput_mb_per_sec"]) << ','
        << fmt_number(mode_report["total_cycles"]) << ','
        << mode_report["bottleneck_kernel"].get<std::string>() << ','
        << fmt_number(mode_report["parallel_efficiency"]) << ','
        << fmt_number(mode_report["contention_factor"]) << ','
        << fmt_number(mode_report["plio_capped"]) << ',' << fmt_number(speedup) << '\n';
}

std::string csv_from_doc(const json& doc) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const json& cell : doc["cells"]) {
        csv_rows_for_mode(out, cell, cell["analytic"], cell["speedup_vs_naive1_analytic"]);
        csv_rows_for_mode(out, cell, cell["event"], cell["speedup_vs_naive1_event"]);
    }
    return out.str();
}

std::string markdown_from_doc(const json& doc) {
    std::ostringstream out;
    out << "# gsfc report: " << doc["preset"].get<std::string>() << "\n\n";
    out << "workload: " << fmt_number(doc["workload"]["n_gaussians"]) << " Gaussians, seed "
        << fmt_number(doc["workload"]["seed"]) << "\n\n";

    out << "| method | units | mode | throughput (MB/s) | total cycles | bottleneck | efficiency "
           "| speedup vs naive-1 |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const json& cell : doc["cells"]) {
        for (const char* mode : {"analytic", "event"}) {
            const json& r = cell[mode];
            const json& speedup = std::string(mode) == "analytic"
                                      ? cell["speedup_vs_naive1_analytic"]
                                      : cell["speedup_vs_naive1_event"];
            out << "| " << cell["method"].get<std::string>() << " | " << fmt_number(cell["units"])
                << " | " << mode << " | " << fmt_number(r["throughput_mb_per_sec"]) << " | "
                << fmt_number(r["total_cycles"]) << " | "
                << r["bottleneck_kernel"].get<std::string>() << " | "
                << fmt_number(r["parallel_efficiency"]) << " | " << fmt_number(speedup) << " |\n";
        }
    }
    out << '\n';

    for (const json& cell : doc["cells"]) {
        for (const char* mode : {"analytic", "event"}) {
            const json& r = cell[mode];
            out << "## " << cell["method"].get<std::string>() << "-" << fmt_number(cell["units"])
                << " (" << mode << ")\n\n";
            out << "| kernel | avg | min | max | transfer | service | measured avg | measured min "
                   "| measured max | busy | stall |\n";
            out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
            for (const json& k : r["kernels"]) {
                out << "| " << k["name"].get<std::string>() << " | " << fmt_number(k["avg"])
                    << " | " << fmt_number(k["min"]) << " | " << fmt_number(k["max"]) << " | "
                    << fmt_number(k["transfer_cycles"]) << " | "
                    << fmt_number(k["service_cycles"]) << " | " << fmt_number(k["measured_avg"])
                    << " | " << fmt_number(k["measured_min"]) << " | "
                    << fmt_number(k["measured_max"]) << " | " << fmt_number(k["busy_cycles"])
                    << " | " << fmt_number(k["stall_cycles"]) << " |\n";
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace

std::string report_json(const ExperimentResult& result) {
    return result_to_json(result).dump(2) + "\n";
}

std::string report_csv(const ExperimentResult& result) {
    return csv_from_doc(result_to_json(result));
}

std::string report_csv_from_json(const std::string& json_doc) {
    json doc;
    try {
        doc = json::parse(json_doc);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
    return csv_from_doc(doc);
}

std::string report_markdown_from_json(const std::string& json_doc) {
    json doc;
    try {
        doc = json::parse(json_doc);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
    return markdown_from_doc(doc);
}

void write_report_files(const ExperimentResult& result, const std::string& out_prefix) {
    const std::string json_text = report_json(result);
    {
        std::ofstream out(out_prefix + ".json", std::ios::binary);
        if (!out) throw ParseError("cannot write " + out_prefix + ".json");
        out << json_text;
    }
    {
        std::ofstream out(out_prefix + ".csv", std::ios::binary);
        if (!out) throw ParseError("cannot write " + out_prefix + ".csv");
        out << report_csv_from_json(json_text);
    }
}

namespace {

Vec3 vec3_from(const json& arr, const char* what) {
    if (!arr.is_array() || arr.size() != 3)
        throw ParseError(std::string("camera json: ") + what + " must be an array of 3 numbers");
    return {arr[0].get<float>(), arr[1].get<float>(), arr[2].get<float>()};
}

Vec2 vec2_from(const json& arr, const char* what) {
    if (!arr.is_array() || arr.size() != 2)
        throw ParseError(std::string("camera json: ") + what + " must be an array of 2 numbers");
    return {arr[0].get<float>(), arr[1].get<float>()};
}

}  // namespace

CameraParams camera_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("camera json: ") + e.what());
    }
    for (const char* key : {"rotation_cw", "translation_cw", "focal", "principal"})
        if (!doc.contains(key))
            throw ParseError(std::string("camera json: missing field ") + key);
    const json& rot = doc["rotation_cw"];
    if (!rot.is_array() || rot.size() != 9)
        throw ParseError("camera json: rotation_cw must be an array of 9 numbers (row-major)");
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = rot[i].get<float>();
    try {
        return CameraParams(r, vec3_from(doc["translation_cw"], "translation_cw"),
                            vec2_from(doc["focal"], "focal"),
                            vec2_from(doc["principal"], "principal"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("camera json: ") + e.what());
    }
}

CameraParams load_camera_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("camera json: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return camera_from_json_text(ss.str());
}

std::string camera_to_json_text(const CameraParams& cam) {
    ordered_json doc;
    doc["rotation_cw"] = cam.rotation_cw().m;
    doc["translation_cw"] = {cam.translation_cw().x, cam.translation_cw().y,
                             cam.translation_cw().z};
    doc["focal"] = {cam.focal().x, cam.focal().y};
    doc["principal"] = {cam.principal().x, cam.principal().y};
    return doc.dump(2) + "\n";
}

}  // namespace gsfc::io
