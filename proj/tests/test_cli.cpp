#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& cmd) {
    const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return rc;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gsfc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

const std::string cli = GSFC_CLI_PATH;

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen, verify, run, sweep, report work end to end") {
    TempDir tmp;
    const std::string data = (tmp.path / "d.gsfc").string();

    CHECK(run(cli + " gen -n 50 --seed 9 -o " + data) == 0);
    CHECK(fs::file_size(data) == 16 + 50 * 236);

    // Determinism: same seed, same bytes.
    const std::string data2 = (tmp.path / "d2.gsfc").string();
    CHECK(run(cli + " gen -n 50 --seed 9 -o " + data2) == 0);
    CHECK(slurp(data) == slurp(data2));

    CHECK(run(cli + " verify -f " + data) == 0);

    const std::string rpt = (tmp.path / "w1").string();
    CHECK(run(cli + " run --preset window-1 -o " + rpt) == 0);
    CHECK(fs::exists(rpt + ".json"));
    CHECK(fs::exists(rpt + ".csv"));

    const std::string md = (tmp.path / "w1.md").string();
    CHECK(run(cli + " report -i " + rpt + ".json --format markdown -o " + md) == 0);
    CHECK(slurp(md).find("| color | 371 |") != std::string::npos);

    // The emitted CSV table carries the calibrated cycle rows verbatim.
    CHECK(slurp(rpt + ".csv").find("window,1,analytic,kernel,color,371,371,371,8,379") !=
          std::string::npos);

    const std::string sweep = (tmp.path / "sweep").string();
    CHECK(run(cli + " sweep -o " + sweep) == 0);
    CHECK(fs::exists(sweep + ".csv"));
}

TEST_CASE("explicit flags and error paths") {
    TempDir tmp;
    const std::string rpt = (tmp.path / "s2").string();
    CHECK(run(cli + " run --method stream --units 1 --fifo-depth 64 --seed 3 -o " + rpt) == 0);
    CHECK(fs::exists(rpt + ".json"));

    // 51 units cannot be placed on the 50-column mesh.
    CHECK(run(cli + " run --method window --units 51") != 0);
    // Unknown preset.
    CHECK(run(cli + " run --preset no-such-preset") != 0);
    // Missing file.
    CHECK(run(cli + " verify -f " + (tmp.path / "missing.gsfc").string()) != 0);
}

TEST_SUITE_END();
