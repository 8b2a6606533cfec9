#include <doctest.h>

#include <sstream>

#include "gsfc/arch.hpp"
#include "gsfc/dataset.hpp"
#include "gsfc/staged.hpp"
#include "gsfc/task_graph.hpp"

using namespace gsfc;
using namespace gsfc::arch;

TEST_SUITE_BEGIN("arch");

TEST_CASE("mesh defaults") {
    const MeshConfig mesh;
    CHECK(mesh.rows == 8);
    CHECK(mesh.cols == 50);
    CHECK(mesh.clock_hz == doctest::Approx(1.25e9));
    CHECK(mesh.local_mem_bytes == 32 * 1024);
    CHECK(mesh.instr_mem_bytes == 16 * 1024);
}

TEST_CASE("interface and boundary-port defaults") {
    const InterfaceSpec iface;
    CHECK(iface.window_load_units == 2);
    CHECK(iface.window_load_bits == 256);
    CHECK(iface.window_store_units == 1);
    CHECK(iface.window_store_bits == 256);
    CHECK(iface.stream_bits_per_cycle == 32);
    CHECK(iface.stream_ports_in == 2);
    CHECK(iface.stream_ports_out == 2);
    CHECK(iface.fifo_depth == 4);

    const PlioSpec plio;
    CHECK(plio.array_to_fabric_bytes_per_sec == doctest::Approx(1.0e12));
    CHECK(plio.fabric_to_array_bytes_per_sec == doctest::Approx(1.3e12));
    CHECK_FALSE(plio.external_cap_bytes_per_sec.has_value());

    const ContentionModel contention;
    CHECK(contention.saturation_units == 25);
}

TEST_CASE("transfer_cycles: zero bytes") {
    const InterfaceSpec iface;
    CHECK(transfer_cycles(0, iface) == 0);
}

TEST_CASE("transfer_cycles: one record over a stream") {
    InterfaceSpec iface;
    iface.kind = InterfaceKind::stream;
    CHECK(transfer_cycles(236, iface) == 59);  // ceil(1888 / 32)
}

TEST_CASE("transfer_cycles: one record over window loads and stores") {
    const InterfaceSpec iface;
    CHECK(window_load_cycles(236, iface) == 4);   // ceil(1888 / 512)
    CHECK(window_store_cycles(236, iface) == 8);  // ceil(1888 / 256)
    CHECK(transfer_cycles(236, iface) == 8);      // slower leg governs the hop
}

TEST_CASE("transfer_cycles: monotone, and linear on whole-word multiples") {
    InterfaceSpec stream;
    stream.kind = InterfaceKind::stream;
    const InterfaceSpec window;
    std::int64_t prev_s = 0, prev_w = 0;
    for (std::int64_t b = 0; b <= 2048; ++b) {
        const std::int64_t s = transfer_cycles(b, stream);
        const std::int64_t w = transfer_cycles(b, window);
        CHECK(s >= prev_s);
        CHECK(w >= prev_w);
        CHECK(w <= s);  // window moves any payload at least as fast
        prev_s = s;
        prev_w = w;
    }
    for (std::int64_t words = 1; words <= 64; ++words)
        CHECK(transfer_cycles(4 * words, stream) == words);
}

TEST_CASE("calibrated profiles: shipped rows are exact") {
    const KernelCostProfile w = calibrated_profile(Method::window);
    CHECK(w.at(KernelId::color).avg == 371);
    CHECK(w.at(KernelId::dir_vec).avg == 83);
    CHECK(w.at(KernelId::cov2d).avg == 184);
    CHECK(w.at(KernelId::jacobian).avg == 130);
    CHECK(w.at(KernelId::cov2d_inv).avg == 57);
    CHECK(w.at(KernelId::projection).avg == 89);
    CHECK(w.at(KernelId::cov3d).avg == 194);
    CHECK(w.at(KernelId::cov2d).min == 183);
    CHECK(w.at(KernelId::cov2d).max == 185);

    const KernelCostProfile n = calibrated_profile(Method::naive);
    CHECK(n.at(KernelId::color).avg == 1822);
    CHECK(n.at(KernelId::cov2d).avg == 1342);
    CHECK(n.at(KernelId::cov2d_inv).avg == 1180);
    CHECK(n.at(KernelId::projection).avg == 670);
    CHECK(n.at(KernelId::cov3d).avg == 276);
    CHECK(n.at(KernelId::cov3d).min == 276);
    CHECK(n.at(KernelId::cov3d).max == 277);
    CHECK_FALSE(n.has(KernelId::dir_vec));
    CHECK_FALSE(n.has(KernelId::jacobian));

    const KernelCostProfile s = calibrated_profile(Method::stream);
    CHECK(s.at(KernelId::dir_vec).avg == 262);
    CHECK(s.at(KernelId::dir_vec).min == 77);
    CHECK(s.at(KernelId::dir_vec).max == 428);
    CHECK(s.at(KernelId::color).avg == 433);
}

TEST_CASE("calibrated profiles: bottleneck is color for every method") {
    for (Method m : {Method::naive, Method::stream, Method::window})
        CHECK(calibrated_profile(m).bottleneck() == KernelId::color);
}

TEST_CASE("profile round-trip through the key/value format") {
    for (Method m : {Method::naive, Method::stream, Method::window}) {
        const KernelCostProfile p = calibrated_profile(m);
        std::stringstream ss;
        save_profile(p, ss);
        const KernelCostProfile q = load_profile(ss);
        CHECK(q.source == p.source);
        CHECK(q.cost.size() == p.cost.size());
        for (const auto& [k, c] : p.cost) {
            CHECK(q.at(k).avg == c.avg);
            CHECK(q.at(k).min == c.min);
            CHECK(q.at(k).max == c.max);
        }
    }
}

TEST_CASE("profile loader rejects malformed input") {
    std::stringstream bad1("color.avg 371");
    CHECK_THROWS_AS((void)load_profile(bad1), ConfigError);
    std::stringstream bad2("warp.avg = 371");
    CHECK_THROWS_AS((void)load_profile(bad2), ConfigError);
    std::stringstream bad3("color.avg = 0\ncolor.min = 0\ncolor.max = 0");
    CHECK_THROWS_AS((void)load_profile(bad3), ConfigError);
}

TEST_CASE("analytic profile: overhead-only kernel") {
    std::map<KernelId, OpCounts> counts;
    counts[KernelId::color] = OpCounts{};
    const KernelId only[] = {KernelId::color};
    const KernelCostProfile p = analytic_profile(counts, only);
    CHECK(p.at(KernelId::color).avg == 20);
}

TEST_CASE("analytic profile: missing kernel is a configuration error") {
    std::map<KernelId, OpCounts> counts;
    counts[KernelId::color] = OpCounts{};
    const auto kernels = mapper::kernels_for(mapper::GraphKind::partitioned7);
    CHECK_THROWS_AS((void)analytic_profile(counts, kernels), ConfigError);
}

TEST_CASE("analytic profile: vectorized cov3D beats the 54-MAC scalar form") {
    const Gaussian g = io::generate(1, 99).front();
    const CameraParams cam = CameraParams::default_camera();

    const auto partitioned = staged::measure_kernel_ops(g, cam);
    const auto naive = staged::measure_kernel_ops_naive(g, cam);

    const auto k7 = mapper::kernels_for(mapper::GraphKind::partitioned7);
    const auto k5 = mapper::kernels_for(mapper::GraphKind::naive5);
    const KernelCostProfile p7 = analytic_profile(partitioned, k7);
    const KernelCostProfile p5 = analytic_profile(naive, k5);

    CHECK(p7.at(KernelId::cov3d).avg < 54.0 + 20.0);
    CHECK(p7.at(KernelId::cov3d).avg < p5.at(KernelId::cov3d).avg);
}

TEST_CASE("analytic profile: bottleneck kernel is color, as in the calibrated rows") {
    const Gaussian g = io::generate(1, 99).front();
    const CameraParams cam = CameraParams::default_camera();
    const auto counts = staged::measure_kernel_ops(g, cam);
    const auto kernels = mapper::kernels_for(mapper::GraphKind::partitioned7);
    const KernelCostProfile p = analytic_profile(counts, kernels);
    CHECK(p.bottleneck() == KernelId::color);
}

TEST_CASE("contention factor: flat to saturation, nondecreasing penalty beyond") {
    const ContentionModel c;
    for (int n = 1; n <= 25; ++n) CHECK(c.factor(n) == 1.0);
    double prev = 1.0;
    for (int n = 26; n <= 60; ++n) {
        const double f = c.factor(n);
        CHECK(f < 1.0);
        CHECK(f <= prev);
        prev = f;
    }
}

TEST_SUITE_END();
