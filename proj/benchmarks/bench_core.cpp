#include <benchmark/benchmark.h>

#include <vector>

#include "roampath/sim.hpp"
#include "roampath/spline.hpp"
#include "roampath/stats.hpp"
#include "roampath/study.hpp"

using namespace roampath;

namespace {

std::vector<Point3> route() {
    return {{121.47, 31.23, 10000.0}, {123.00, 20.00, 50000.0}, {135.00, 10.00, 50000.0},
            {170.00, 13.00, 50000.0}, {180.00, -5.00, 50000.0}, {200.00, -13.50, 50000.0}};
}

void BM_Eval(benchmark::State& state) {
    const auto curve = PathCurve::make(static_cast<CurveKind>(state.range(0)), route());
    double s = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve.eval(s));
        s = s < 0.999 ? s + 0.001 : 0.0;
    }
}
BENCHMARK(BM_Eval)->Arg(0)->Arg(1)->Arg(2);

void BM_ArcLength(benchmark::State& state) {
    const auto curve = PathCurve::make(static_cast<CurveKind>(state.range(0)), route());
    for (auto _ : state) benchmark::DoNotOptimize(arc_length(curve));
}
BENCHMARK(BM_ArcLength)->Arg(0)->Arg(1)->Arg(2);

void BM_Traverse(benchmark::State& state) {
    const auto curve = PathCurve::catmull_rom(route());
    SceneSpec scene;
    scene.obstacles.push_back({curve.eval(0.5), 4.0});
    const auto profile = SpeedProfile::constant(200.0, 6);
    for (auto _ : state) benchmark::DoNotOptimize(traverse(curve, profile, scene, 0.01));
}
BENCHMARK(BM_Traverse)->Unit(benchmark::kMillisecond);

void BM_LillieforsNull(benchmark::State& state) {
    for (auto _ : state) {
        LillieforsNull null(static_cast<std::size_t>(state.range(0)), 1, 10000);
        benchmark::DoNotOptimize(null.p_value(0.1));
    }
}
BENCHMARK(BM_LillieforsNull)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_AnalyzeStudy(benchmark::State& state) {
    const auto records = synthesize_study(50, 7);
    for (auto _ : state) benchmark::DoNotOptimize(analyze_study(records, {}));
}
BENCHMARK(BM_AnalyzeStudy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
