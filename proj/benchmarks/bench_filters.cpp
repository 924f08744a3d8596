#include "udrfs/harness/pipeline.hpp"
#include "udrfs/phd.hpp"
#include "udrfs/simulator.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace udrfs;

/// Intensity with n components spread along the reference scenario's surveillance box.
GaussianMixture spread_intensity(const ScenarioModel& model, int n) {
    GaussianMixture gm;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(model.state_dim);
        mean[0] = -100.0 + 200.0 * i / std::max(1, n - 1);
        gm.add({0.5, mean, Eigen::MatrixXd::Identity(model.state_dim, model.state_dim) * 4.0});
    }
    return gm;
}

MeasurementList spread_scan(const ScenarioModel& model, int m) {
    MeasurementList Z;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd z = Eigen::VectorXd::Zero(model.meas_dim);
        z[0] = -100.0 + 200.0 * j / std::max(1, m - 1);
        Z.push_back(z);
    }
    return Z;
}

void BM_PhdSingleStep(benchmark::State& state) {
    const Scenario s = harness::reference_scenario();
    const GaussianMixture D = spread_intensity(s.model, static_cast<int>(state.range(0)));
    const MeasurementList Z = spread_scan(s.model, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(phd_single_step(D, Z, s.model));
}
BENCHMARK(BM_PhdSingleStep)->ArgsProduct({{8, 32, 128}, {4, 16}});

void BM_DudPhdStep(benchmark::State& state) {
    const Scenario s = harness::reference_scenario();
    const int n = static_cast<int>(state.range(0));
    const UDMixture D{spread_intensity(s.model, n / 2), spread_intensity(s.model, n - n / 2)};
    const MeasurementList Z = spread_scan(s.model, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(dud_phd_step(D, Z, s.model));
}
BENCHMARK(BM_DudPhdStep)->ArgsProduct({{8, 32, 128}, {4, 16}});

void BM_Simulate(benchmark::State& state) {
    const Scenario s = harness::reference_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(harness::simulate_scenario(s));
}
BENCHMARK(BM_Simulate);

void BM_ReferenceRun(benchmark::State& state) {
    const Scenario s = harness::reference_scenario();
    const Simulation sim = harness::simulate_scenario(s);
    for (auto _ : state) benchmark::DoNotOptimize(harness::run_gm_filter(s, "dud", sim));
}
BENCHMARK(BM_ReferenceRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
