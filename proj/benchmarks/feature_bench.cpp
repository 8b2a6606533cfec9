#include <benchmark/benchmark.h>

#include "gsfc/dataset.hpp"
#include "gsfc/kernels.hpp"
#include "gsfc/sim.hpp"
#include "gsfc/staged.hpp"

namespace {

const std::vector<gsfc::Gaussian>& workload() {
    static const auto gs = gsfc::io::generate(1024, 42);
    return gs;
}

void BM_ComputeFeatures(benchmark::State& state) {
    const auto cam = gsfc::CameraParams::default_camera();
    const auto& gs = workload();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gsfc::compute_features(gs[i % gs.size()], cam));
        ++i;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ComputeFeatures);

void BM_StagedFeatures(benchmark::State& state) {
    const auto cam = gsfc::CameraParams::default_camera();
    const auto& gs = workload();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gsfc::staged::staged_features(gs[i % gs.size()], cam));
        ++i;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_StagedFeatures);

void BM_Cov3dNaive(benchmark::State& state) {
    const auto& g = workload().front();
    const gsfc::Mat3 r = gsfc::quat_to_rotation(g.rotation);
    for (auto _ : state) benchmark::DoNotOptimize(gsfc::cov3d_naive(r, g.scale));
}
BENCHMARK(BM_Cov3dNaive);

void BM_Cov3dVectorized(benchmark::State& state) {
    const auto& g = workload().front();
    const gsfc::Mat3 r = gsfc::quat_to_rotation(g.rotation);
    const auto r1 = gsfc::LaneVector::from3(r.at(0, 0), r.at(0, 1), r.at(0, 2));
    const auto r2 = gsfc::LaneVector::from3(r.at(1, 0), r.at(1, 1), r.at(1, 2));
    const auto r3 = gsfc::LaneVector::from3(r.at(2, 0), r.at(2, 1), r.at(2, 2));
    const auto s = gsfc::LaneVector::from3(g.scale.x, g.scale.y, g.scale.z);
    for (auto _ : state) benchmark::DoNotOptimize(gsfc::cov3d_vectorized(r1, r2, r3, s));
}
BENCHMARK(BM_Cov3dVectorized);

void BM_ShColor(benchmark::State& state) {
    const auto& g = workload().front();
    const auto cam = gsfc::CameraParams::default_camera();
    const auto dir = gsfc::ray_dir(g.position, cam.position_w());
    const auto basis = gsfc::sh_basis(dir.dir);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            gsfc::sh_color(std::span<const float, 48>(g.sh), basis));
}
BENCHMARK(BM_ShColor);

void BM_SimulateAnalytic(benchmark::State& state) {
    gsfc::sim::SimConfig base;
    const auto setup = gsfc::sim::setup_method(base, gsfc::arch::Method::window,
                                               static_cast<int>(state.range(0)));
    const auto placement =
        gsfc::mapper::place(setup.graph, static_cast<int>(state.range(0)), setup.cfg.mesh);
    for (auto _ : state)
        benchmark::DoNotOptimize(gsfc::sim::simulate_analytic(setup.cfg, placement));
}
BENCHMARK(BM_SimulateAnalytic)->Arg(1)->Arg(50);

void BM_SimulateEvent(benchmark::State& state) {
    gsfc::sim::SimConfig base;
    base.n_gaussians = state.range(0);
    const auto setup = gsfc::sim::setup_method(base, gsfc::arch::Method::stream, 1);
    const auto placement = gsfc::mapper::place(setup.graph, 1, setup.cfg.mesh);
    for (auto _ : state)
        benchmark::DoNotOptimize(gsfc::sim::simulate_event(setup.cfg, placement));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateEvent)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
