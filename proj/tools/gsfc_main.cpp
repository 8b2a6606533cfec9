// gsfc command line: dataset generation, oracle verification, simulator runs,
// sweeps, and report reformatting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gsfc/dataset.hpp"
#include "gsfc/experiment.hpp"
#include "gsfc/gaussian_file.hpp"
#include "gsfc/verify.hpp"

namespace {

struct RunArgs {
    std::string preset;
    std::string method = "window";
    int units = 1;
    std::string profile = "calibrated";  // calibrated | analytic | <file>
    std::string mode = "both";           // analytic | event | both (summary selection)
    std::int64_t gaussians = 0;          // 0: keep preset default
    std::uint64_t seed = 0;
    bool seed_set = false;
    int fifo_depth = 0;  // 0: keep default
    double external_cap_mb = 0.0;
    bool no_transfer = false;
    bool sequential = false;
    bool jitter = false;
    std::string out;
};

gsfc::io::ExperimentOptions to_options(const RunArgs& args) {
    gsfc::io::ExperimentOptions opts;
    if (args.profile != "calibrated" && args.profile != "analytic")
        opts.profile_file = args.profile;
    if (args.external_cap_mb > 0.0) opts.external_cap_bytes_per_sec = args.external_cap_mb * 1e6;
    if (args.fifo_depth > 0) opts.fifo_depth = args.fifo_depth;
    if (args.gaussians > 0) opts.n_gaussians = args.gaussians;
    if (args.seed_set) opts.seed = args.seed;
    opts.charge_transfer = !args.no_transfer;
    opts.pipelined = !args.sequential;
    opts.jitter = args.jitter;
    return opts;
}

gsfc::io::ExperimentPreset preset_from_args(const RunArgs& args) {
    if (!args.preset.empty()) {
        const gsfc::io::ExperimentPreset* p = gsfc::io::find_preset(args.preset);
        if (!p) throw CLI::ValidationError("--preset", "unknown preset: " + args.preset);
        return *p;
    }
    gsfc::io::ExperimentPreset p;
    const auto method = gsfc::arch::method_from_name(args.method);
    if (!method) throw CLI::ValidationError("--method", "unknown method: " + args.method);
    p.name = args.method + "-" + std::to_string(args.units);
    p.method = *method;
    p.unit_counts = {args.units};
    p.profile_source = args.profile == "analytic" ? gsfc::arch::ProfileSource::analytic
                                                  : gsfc::arch::ProfileSource::calibrated;
    return p;
}

void print_summary(const gsfc::io::ExperimentResult& result, const std::string& mode) {
    std::printf("%-8s %-6s %-9s %16s %14s %-10s %10s %10s\n", "method", "units", "mode",
                "throughput MB/s", "total cycles", "bottleneck", "efficiency", "speedup");
    for (const auto& cell : result.cells) {
        auto line = [&](const char* m, const gsfc::sim::SimReport& r, double speedup) {
            std::printf("%-8s %-6d %-9s %16.3f %14.0f %-10s %10.4f %10.3f\n",
                        std::string(gsfc::arch::method_name(cell.method)).c_str(), cell.units, m,
                        r.throughput_bytes_per_sec / 1e6, r.total_cycles,
                        std::string(gsfc::kernel_name(r.bottleneck_kernel)).c_str(),
                        r.parallel_efficiency, speedup);
        };
        if (mode != "event") line("analytic", cell.analytic, cell.speedup_analytic);
        if (mode != "analytic") line("event", cell.event, cell.speedup_event);
    }
}

int cmd_gen(std::int64_t count, std::uint64_t seed, const std::string& out) {
    const auto gaussians = gsfc::io::generate(count, seed);
    gsfc::io::write_gaussian_file(out, gaussians);
    std::printf("wrote %lld gaussians to %s (seed %llu)\n", static_cast<long long>(count),
                out.c_str(), static_cast<unsigned long long>(seed));
    return 0;
}

int cmd_verify(const std::string& file, const std::string& camera_path, double tolerance) {
    const auto gaussians = gsfc::io::read_gaussian_file(file);
    const gsfc::CameraParams cam = camera_path.empty()
                                       ? gsfc::CameraParams::default_camera()
                                       : gsfc::io::load_camera_file(camera_path);
    const auto report = gsfc::io::verify(gaussians, cam, tolerance);
    std::cout << gsfc::io::verify_report_text(report);
    return report.pass ? 0 : 1;
}

int cmd_run(const RunArgs& args) {
    const auto preset = preset_from_args(args);
    const auto result = gsfc::io::run_experiment(preset, to_options(args));
    print_summary(result, args.mode);
    if (!args.out.empty()) {
        gsfc::io::write_report_files(result, args.out);
        std::printf("wrote %s.json and %s.csv\n", args.out.c_str(), args.out.c_str());
    }
    return 0;
}

int cmd_sweep(const RunArgs& args) {
    const auto result = gsfc::io::run_default_sweep(to_options(args));
    print_summary(result, args.mode);
    if (!args.out.empty()) {
        gsfc::io::write_report_files(result, args.out);
        std::printf("wrote %s.json and %s.csv\n", args.out.c_str(), args.out.c_str());
    }
    return 0;
}

int cmd_report(const std::string& in, const std::string& format, const std::string& out) {
    std::ifstream f(in);
    if (!f) {
        std::fprintf(stderr, "cannot open %s\n", in.c_str());
        return 1;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string text = format == "csv" ? gsfc::io::report_csv_from_json(ss.str())
                                             : gsfc::io::report_markdown_from_json(ss.str());
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream o(out, std::ios::binary);
        o << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian splat feature computation and tile-mesh pipeline simulator"};
    app.require_subcommand(1);

    // gen
    std::int64_t gen_count = 100;
    std::uint64_t gen_seed = 12345;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic Gaussian dataset");
    gen->add_option("-n,--count", gen_count, "Number of Gaussians")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("-o,--out", gen_out, "Output .gsfc file")->required();

    // verify
    std::string verify_file, verify_camera;
    double verify_tol = 1e-5;
    CLI::App* verify =
        app.add_subcommand("verify", "Check the staged pipeline against the scalar reference");
    verify->add_option("-f,--file", verify_file, "Input .gsfc file")->required();
    verify->add_option("--camera", verify_camera, "Camera parameters (JSON)");
    verify->add_option("--tolerance", verify_tol, "Per-field deviation tolerance");

    // run
    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Simulate one method/unit-count configuration");
    run->add_option("--preset", run_args.preset, "Shipped preset name (e.g. window-1)");
    run->add_option("--method", run_args.method, "naive | stream | window");
    run->add_option("--units", run_args.units, "Parallel feature-computation units")
        ->check(CLI::PositiveNumber);
    run->add_option("--profile", run_args.profile, "calibrated | analytic | <profile file>");
    run->add_option("--mode", run_args.mode, "analytic | event | both (summary selection)")
        ->check(CLI::IsMember({"analytic", "event", "both"}));
    run->add_option("-n,--gaussians", run_args.gaussians, "Workload size");
    auto* seed_opt = run->add_option("--seed", run_args.seed, "Simulation seed");
    run->add_option("--fifo-depth", run_args.fifo_depth, "Event-model FIFO depth (payload slots)");
    run->add_option("--external-cap", run_args.external_cap_mb,
                    "External bandwidth cap in MB/s (throughput clip)");
    run->add_flag("--no-transfer", run_args.no_transfer, "Do not charge input transfer cycles");
    run->add_flag("--sequential", run_args.sequential,
                  "One Gaussian traverses the whole chain before the next enters");
    run->add_flag("--jitter", run_args.jitter, "Draw per-invocation cost from [min,max] (seeded)");
    run->add_option("-o,--out", run_args.out, "Report path prefix (.json/.csv appended)");

    // sweep
    RunArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Run the shipped method/parallelism grid");
    sweep->add_option("-n,--gaussians", sweep_args.gaussians, "Workload size");
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_args.seed, "Simulation seed");
    sweep->add_option("--fifo-depth", sweep_args.fifo_depth,
                      "Event-model FIFO depth (payload slots)");
    sweep->add_option("--external-cap", sweep_args.external_cap_mb,
                      "External bandwidth cap in MB/s");
    sweep->add_flag("--no-transfer", sweep_args.no_transfer,
                    "Do not charge input transfer cycles");
    sweep->add_flag("--jitter", sweep_args.jitter, "Seeded per-invocation cost jitter");
    sweep->add_option("--mode", sweep_args.mode, "analytic | event | both (summary selection)")
        ->check(CLI::IsMember({"analytic", "event", "both"}));
    sweep->add_option("-o,--out", sweep_args.out, "Report path prefix (.json/.csv appended)");

    // report
    std::string report_in, report_format = "markdown", report_out;
    CLI::App* report = app.add_subcommand("report", "Reformat a JSON report");
    report->add_option("-i,--in", report_in, "Input report .json")->required();
    report->add_option("--format", report_format, "csv | markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    report->add_option("-o,--out", report_out, "Output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_count, gen_seed, gen_out);
        if (verify->parsed()) return cmd_verify(verify_file, verify_camera, verify_tol);
        if (run->parsed()) {
            run_args.seed_set = seed_opt->count() > 0;
            return cmd_run(run_args);
        }
        if (sweep->parsed()) {
            sweep_args.seed_set = sweep_seed_opt->count() > 0;
            return cmd_sweep(sweep_args);
        }
        if (report->parsed()) return cmd_report(report_in, report_format, report_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
