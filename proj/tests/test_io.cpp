#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gsfc/dataset.hpp"
#include "gsfc/experiment.hpp"
#include "gsfc/gaussian_file.hpp"
#include "gsfc/verify.hpp"

using namespace gsfc;
using json = nlohmann::json;

namespace {

std::string file_bytes(const std::vector<Gaussian>& gaussians) {
    std::ostringstream ss(std::ios::binary);
    io::write_gaussian_file(ss, gaussians);
    return ss.str();
}

// Minimal checker for the subset of JSON Schema used by docs/report-schema.json:
// type, required, properties, items, enum, $ref into #/definitions.
void check_schema(const json& schema, const json& value, const json& root, const std::string& path,
                  std::vector<std::string>& errors) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        REQUIRE(ref.rfind(prefix, 0) == 0);
        check_schema(root["definitions"][ref.substr(prefix.size())], value, root, path, errors);
        return;
    }
    if (schema.contains("type")) {
        const auto matches = [&](const std::string& t) {
            if (t == "object") return value.is_object();
            if (t == "array") return value.is_array();
            if (t == "string") return value.is_string();
            if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
            if (t == "number") return value.is_number();
            if (t == "boolean") return value.is_boolean();
            if (t == "null") return value.is_null();
            return false;
        };
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const auto& t : schema["type"]) ok = ok || matches(t.get<std::string>());
        } else {
            ok = matches(schema["type"].get<std::string>());
        }
        if (!ok) errors.push_back(path + ": type mismatch");
    }
    if (schema.contains("enum") && !value.is_null()) {
        bool ok = false;
        for (const auto& e : schema["enum"]) ok = ok || (e == value);
        if (!ok) errors.push_back(path + ": not in enum");
    }
    if (schema.contains("required") && value.is_object()) {
        for (const auto& req : schema["required"])
            if (!value.contains(req.get<std::string>()))
                errors.push_back(path + ": missing " + req.get<std::string>());
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key)) check_schema(sub, value[key], root, path + "/" + key, errors);
    }
    if (schema.contains("items") && value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
            check_schema(schema["items"], value[i], root, path + "[" + std::to_string(i) + "]",
                         errors);
    }
}

std::vector<std::string> validate_against_shipped_schema(const std::string& doc_text) {
    std::ifstream f(std::string(GSFC_SOURCE_DIR) + "/docs/report-schema.json");
    REQUIRE(f.good());
    const json schema = json::parse(f);
    const json doc = json::parse(doc_text);
    std::vector<std::string> errors;
    check_schema(schema, doc, schema, "", errors);
    return errors;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("generate: deterministic bytes per seed") {
    const auto a = io::generate(100, 42);
    const auto b = io::generate(100, 42);
    CHECK(file_bytes(a) == file_bytes(b));
    const auto c = io::generate(100, 43);
    CHECK(file_bytes(a) != file_bytes(c));
}

TEST_CASE("generate: empty request rejected") {
    CHECK_THROWS_AS((void)io::generate(0, 1), std::invalid_argument);
}

TEST_CASE("generate: distribution guarantees") {
    const auto gs = io::generate(2000, 7);
    CHECK(gs.size() == 2000);
    for (const Gaussian& g : gs) {
        const float qn = std::sqrt(g.rotation.w * g.rotation.w + g.rotation.x * g.rotation.x +
                                   g.rotation.y * g.rotation.y + g.rotation.z * g.rotation.z);
        CHECK(std::fabs(qn - 1.0f) < 1e-6f);
        CHECK(g.scale.x > 0.0f);
        CHECK(g.scale.x <= 1.0f);
        CHECK(g.scale.x >= 0.01f * 0.999f);
        CHECK(g.opacity > 0.0f);
        CHECK(g.opacity <= 1.0f);
        CHECK(std::fabs(g.position.x) <= 10.0f);
        CHECK(std::fabs(g.position.y) <= 10.0f);
        CHECK(std::fabs(g.position.z) <= 10.0f);
    }
    // Degree-0 shift moves the mean of the first three coefficients.
    double dc = 0, rest = 0;
    for (const Gaussian& g : gs) {
        dc += (g.sh[0] + g.sh[1] + g.sh[2]) / 3.0;
        rest += g.sh[5];
    }
    CHECK(dc / double(gs.size()) == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::fabs(rest / double(gs.size())) < 0.1);
}

TEST_CASE("gaussian file: round-trip is bit-identical") {
    const auto gs = io::generate(64, 3);
    const std::string bytes = file_bytes(gs);
    CHECK(bytes.size() == io::kGaussianFileHeaderBytes + 64 * kGaussianRecordBytes);

    std::istringstream in(bytes, std::ios::binary);
    const auto back = io::read_gaussian_file(in);
    CHECK(file_bytes(back) == bytes);
}

TEST_CASE("gaussian file: truncated payload names expected and actual length") {
    const auto gs = io::generate(4, 3);
    std::string bytes = file_bytes(gs);
    bytes.resize(bytes.size() - 10);
    std::istringstream in(bytes, std::ios::binary);
    try {
        (void)io::read_gaussian_file(in);
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("expected 960 bytes") != std::string::npos);
        CHECK(msg.find("got 950") != std::string::npos);
    }
}

TEST_CASE("gaussian file: bad magic and bad version are position-exact") {
    const auto gs = io::generate(1, 3);
    std::string bytes = file_bytes(gs);
    std::string corrupted = bytes;
    corrupted[0] = 'X';
    std::istringstream in1(corrupted, std::ios::binary);
    try {
        (void)io::read_gaussian_file(in1);
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find("offset 0") != std::string::npos);
    }

    corrupted = bytes;
    corrupted[4] = 9;
    std::istringstream in2(corrupted, std::ios::binary);
    try {
        (void)io::read_gaussian_file(in2);
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
}

TEST_CASE("verify: generated workload passes against the default camera") {
    const auto gs = io::generate(200, 11);
    const auto report = io::verify(gs, CameraParams::default_camera());
    CHECK(report.pass);
    CHECK(report.compared == 200);
    CHECK(report.worst_deviation <= 1e-5);
    const std::string text = io::verify_report_text(report);
    CHECK(text.find("PASS") != std::string::npos);
}

TEST_CASE("verify: zero-norm rotation is reported per record, others processed") {
    auto gs = io::generate(10, 11);
    gs[3].rotation = {0, 0, 0, 0};
    const auto report = io::verify(gs, CameraParams::default_camera());
    REQUIRE(report.invalid.size() == 1);
    CHECK(report.invalid[0].index == 3);
    CHECK(report.compared == 9);
    CHECK(report.pass);  // the valid records still agree
}

TEST_CASE("camera json: round-trip and validation") {
    const CameraParams cam = CameraParams::default_camera();
    const std::string text = io::camera_to_json_text(cam);
    const CameraParams back = io::camera_from_json_text(text);
    CHECK(back.focal().x == cam.focal().x);
    CHECK(back.translation_cw().z == cam.translation_cw().z);
    CHECK(back.position_w().z == doctest::Approx(-30.0));

    CHECK_THROWS_AS((void)io::camera_from_json_text("{\"focal\": [1,1]}"), io::ParseError);
    CHECK_THROWS_AS((void)io::camera_from_json_text("not json"), io::ParseError);
    // Non-orthonormal rotation.
    CHECK_THROWS_AS(
        (void)io::camera_from_json_text(
            R"({"rotation_cw":[2,0,0,0,1,0,0,0,1],"translation_cw":[0,0,0],"focal":[1,1],"principal":[0,0]})"),
        io::ParseError);
}

TEST_CASE("presets: the shipped grid is complete") {
    const auto& presets = io::shipped_presets();
    REQUIRE(presets.size() == 7);
    std::set<std::string> names;
    for (const auto& p : presets) names.insert(p.name);
    for (const char* expect :
         {"naive-1", "stream-1", "window-1", "window-4", "window-8", "window-25", "window-50"})
        CHECK(names.count(expect) == 1);
    CHECK(io::find_preset("window-25") != nullptr);
    CHECK(io::find_preset("window-25")->unit_counts == std::vector<int>{25});
    CHECK(io::find_preset("no-such") == nullptr);
}

TEST_CASE("run_experiment: window-1 kernel table equals the calibrated window row") {
    const auto result = io::run_experiment(*io::find_preset("window-1"));
    REQUIRE(result.cells.size() == 1);
    const auto& kernels = result.cells[0].analytic.kernels;
    REQUIRE(kernels.size() == 7);
    // Report order: color, dir_vec, cov2D, Jacobian, cov2D_inv, projection, cov3D.
    const double expect[7] = {371, 83, 184, 130, 57, 89, 194};
    for (int i = 0; i < 7; ++i) CHECK(kernels[static_cast<std::size_t>(i)].profile_avg == expect[i]);
}

TEST_CASE("run_experiment: deterministic report bytes") {
    const auto* preset = io::find_preset("stream-1");
    const auto a = io::run_experiment(*preset);
    const auto b = io::run_experiment(*preset);
    CHECK(io::report_json(a) == io::report_json(b));
    CHECK(io::report_csv(a) == io::report_csv(b));
}

TEST_CASE("run_experiment: capacity error carries the preset name") {
    io::ExperimentPreset bad = *io::find_preset("window-50");
    bad.name = "window-51";
    bad.unit_counts = {51};
    try {
        (void)io::run_experiment(bad);
        FAIL("expected CapacityError");
    } catch (const mapper::CapacityError& e) {
        CHECK(std::string(e.what()).find("window-51") != std::string::npos);
    }
}

TEST_CASE("run_experiment: a profile file overrides the preset source") {
    const std::string path = "test_window_profile.cfg";
    arch::KernelCostProfile custom = arch::calibrated_profile(arch::Method::window);
    custom.cost[KernelId::color] = {1000, 1000, 1000};
    arch::save_profile_file(custom, path);

    io::ExperimentOptions opts;
    opts.profile_file = path;
    const auto result = io::run_experiment(*io::find_preset("window-1"), opts);
    CHECK(result.cells[0].analytic.kernels[0].profile_avg == 1000);
    std::remove(path.c_str());
}

TEST_CASE("run_experiment: analytic profile source works end to end") {
    io::ExperimentPreset preset = *io::find_preset("window-1");
    preset.profile_source = arch::ProfileSource::analytic;
    const auto result = io::run_experiment(preset);
    CHECK(result.cells[0].analytic.bottleneck_kernel == KernelId::color);
    CHECK(result.cells[0].analytic.throughput_bytes_per_sec > 0);
}

TEST_CASE("report json validates against the shipped schema") {
    const auto run = io::run_experiment(*io::find_preset("window-4"));
    const auto errors = validate_against_shipped_schema(io::report_json(run));
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());

    const auto sweep_result = io::run_default_sweep();
    const auto sweep_errors = validate_against_shipped_schema(io::report_json(sweep_result));
    CHECK(sweep_errors.empty());
}

TEST_CASE("sweep covers the seven reference rows") {
    const auto result = io::run_default_sweep();
    CHECK(result.cells.size() == 7);
}

TEST_CASE("csv: documented header and one row per kernel plus summary") {
    const auto result = io::run_experiment(*io::find_preset("window-1"));
    const std::string csv = io::report_csv(result);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "method,units,mode,row_type,kernel,avg_cycles,min_cycles,max_cycles,transfer_cycles,"
          "service_cycles,measured_avg,measured_min,measured_max,busy_cycles,stall_cycles,"
          "throughput_mb_per_sec,total_cycles,bottleneck_kernel,parallel_efficiency,"
          "contention_factor,plio_capped,speedup_vs_naive1");
    int kernel_rows = 0, summary_rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find(",kernel,") != std::string::npos) ++kernel_rows;
        if (line.find(",summary,") != std::string::npos) ++summary_rows;
    }
    CHECK(kernel_rows == 14);  // 7 kernels x 2 modes
    CHECK(summary_rows == 2);

    // The analytic kernel rows reproduce the calibrated table.
    CHECK(csv.find("window,1,analytic,kernel,color,371,371,371,8,379") != std::string::npos);
}

TEST_CASE("report reformatting: csv and markdown from the json document") {
    const auto result = io::run_experiment(*io::find_preset("window-1"));
    const std::string doc = io::report_json(result);
    CHECK(io::report_csv_from_json(doc) == io::report_csv(result));
    const std::string md = io::report_markdown_from_json(doc);
    CHECK(md.find("| color | 371 | 371 | 371 |") != std::string::npos);
    CHECK_THROWS_AS((void)io::report_csv_from_json("nope"), io::ParseError);
}

TEST_SUITE_END();
