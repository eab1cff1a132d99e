// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "featherwing/config.hpp"
#include "featherwing/dynamics.hpp"
#include "featherwing/experiment.hpp"
#include "featherwing/stability.hpp"

using namespace featherwing;

namespace {

ExperimentConfig preset(const std::vector<std::string>& overrides = {}) {
    return load_config_text(preset_text("paper-sec6"), "preset:paper-sec6", overrides);
}

void BM_SweepSerial(benchmark::State& st) {
    const auto plant = preset().plant();
    const auto speeds = linspace(0.1, 100.0, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_abscissa_serial(plant, {LawKind::ma, {1.0}}, speeds));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SweepParallel(benchmark::State& st) {
    const auto plant = preset().plant();
    const auto speeds = linspace(0.1, 100.0, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_abscissa_parallel(plant, {LawKind::ma, {1.0}}, speeds));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

// Fixed horizon so both variants do the same work.
const std::vector<std::string> kShortCompare = {"sim.steps=20000", "compare.extend_until_half=false"};

void BM_CompareSerial(benchmark::State& st) {
    const auto cfg = preset(kShortCompare);
    for (auto _ : st) benchmark::DoNotOptimize(compare_laws_serial(cfg));
}

void BM_CompareParallel(benchmark::State& st) {
    const auto cfg = preset(kShortCompare);
    for (auto _ : st) benchmark::DoNotOptimize(compare_laws_parallel(cfg));
}

void BM_Rk4Step(benchmark::State& st) {
    const auto cfg = preset();
    const auto plant = cfg.plant();
    const ControlLaw law(LawKind::ma, plant, {1.0});
    SimState s = cfg.initial_state();
    const IntegratorOptions opt{};
    for (auto _ : st) {
        s = rk4_step(s, law, plant, 1e-5, opt);
        benchmark::DoNotOptimize(s);
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompareSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompareParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4Step);

BENCHMARK_MAIN();
