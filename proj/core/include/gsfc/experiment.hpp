#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsfc/sim.hpp"
#include "gsfc/types.hpp"

namespace gsfc::io {

struct ExperimentPreset {
    std::string name;
    arch::Method method = arch::Method::window;
    std::vector<int> unit_counts = {1};
    arch::ProfileSource profile_source = arch::ProfileSource::calibrated;
    std::int64_t workload_size = 100;
    std::uint64_t seed = 12345;
};

// naive-1, stream-1, window-{1,4,8,25,50}.
const std::vector<ExperimentPreset>& shipped_presets();
const ExperimentPreset* find_preset(std::string_view name);

struct ExperimentOptions {
    std::optional<std::string> profile_file;  // overrides the preset's profile source
    std::optional<double> external_cap_bytes_per_sec;
    std::optional<int> fifo_depth;
    std::optional<std::int64_t> n_gaussians;
    std::optional<std::uint64_t> seed;
    bool charge_transfer = true;
    bool pipelined = true;
    bool jitter = false;
};

struct ExperimentResult {
    ExperimentPreset preset;
    sim::SimConfig base_cfg;  // configuration echo (per-method fields applied per cell)
    std::vector<sim::SweepCell> cells;
};

// Builds the task graph and placement for each unit count and runs both the
// analytic and the event model, plus the naive-1 baseline for the speedup
// columns. Mapper errors are rethrown with the preset name attached.
ExperimentResult run_experiment(const ExperimentPreset& preset, const ExperimentOptions& opts = {});

// The shipped grid: naive-1, stream-1, window-{1,4,8,25,50} in one result.
ExperimentResult run_default_sweep(const ExperimentOptions& opts = {});

// Report documents. The JSON layout is described by docs/report-schema.json;
// the CSV column set is documented in docs/formats.md. Both are byte-stable
// for identical inputs.
std::string report_json(const ExperimentResult& result);
std::string report_csv(const ExperimentResult& result);
// Reformatters for existing JSON documents (the `report` subcommand).
std::string report_csv_from_json(const std::string& json_doc);
std::string report_markdown_from_json(const std::string& json_doc);
// Writes <out_prefix>.csv and <out_prefix>.json.
void write_report_files(const ExperimentResult& result, const std::string& out_prefix);

// Camera document: {"rotation_cw":[9 row-major], "translation_cw":[3],
// "focal":[fx,fy], "principal":[cx,cy]}.
CameraParams camera_from_json_text(const std::string& text);
CameraParams load_camera_file(const std::string& path);
std::string camera_to_json_text(const CameraParams& cam);

}  // namespace gsfc::io
