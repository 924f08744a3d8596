#include "udrfs/oracle.hpp"
#include "udrfs/tagged.hpp"
#include "udrfs/transition.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace udrfs;

/// Uniform density over the base-distinct sets of a tagged space.
FiniteSetDensity tagged_prior(int num_base, int cap) {
    FiniteSetDensity f{FiniteSpace(2 * num_base, cap)};
    f.space().for_each_subset([&](PointSet X) {
        if (base_distinct(X)) f.set(X, 1.0);
    });
    return f.normalized();
}

void BM_DudPosteriors(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridModel g = aligned(random_grid_model(n, 3, 1U, 0.8));
    const FiniteSetDensity prior = tagged_prior(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(dud_posteriors(prior, PointSet::of({0, 2}), g));
}
BENCHMARK(BM_DudPosteriors)->DenseRange(2, 4);

void BM_SudPosteriors(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridModel g = random_grid_model(n, 3, 2U, 0.8);
    FiniteSetDensity prior{FiniteSpace(n, 3)};
    prior.space().for_each_subset([&](PointSet X) { prior.set(X, 1.0); });
    prior = prior.normalized();
    for (auto _ : state) benchmark::DoNotOptimize(sud_posteriors(prior, PointSet::of({0, 1}), g));
}
BENCHMARK(BM_SudPosteriors)->DenseRange(3, 6);

void BM_NudJtfMultitarget(benchmark::State& state) {
    const GridModel g = aligned(random_grid_model(4, 3, 3U, 0.8));
    const int targets = static_cast<int>(state.range(0));
    PointSet X;
    for (int i = 0; i < targets; ++i) X = X.with(tagged_index(i, i % 2));
    const std::vector<int> Z{0, 1, 1, 2};
    for (auto _ : state) benchmark::DoNotOptimize(nud_jtf_multitarget(Z, X, X, g));
}
BENCHMARK(BM_NudJtfMultitarget)->DenseRange(1, 4);

}  // namespace
