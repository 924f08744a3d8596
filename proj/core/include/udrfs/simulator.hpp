#pragma once

#include "udrfs/bayes_filter.hpp"
#include "udrfs/grid_model.hpp"
#include "udrfs/kalman.hpp"
#include "udrfs/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace udrfs {

/// When the ground-truth detected flag flips relative to the first detection.
enum class FlagTiming { next_step, same_step };

/// Random processes that each get their own generator per step, so changing one
/// (say, clutter) never perturbs the draws of another.
enum class SimProcess : std::uint64_t { survival = 0, motion = 1, birth = 2, detection = 3, measurement_noise = 4, clutter = 5 };

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the generator for (seed, step, process).
[[nodiscard]] std::uint64_t substream_seed(std::uint64_t seed, int step, SimProcess process);

struct TruthTarget {
    int id = 0;
    Eigen::VectorXd x;
    bool detected = false;
};

struct TruthRecord {
    int k = 0;
    std::vector<TruthTarget> targets;
};

struct MeasurementRecord {
    int k = 0;
    MeasurementList Z;
    /// Target id per measurement, -1 for clutter. Diagnostics only.
    std::vector<int> origins;
};

struct Simulation {
    std::vector<TruthRecord> truth;
    std::vector<MeasurementRecord> measurements;
};

/// Targets present before the first step. Each component of `intensity` is an
/// independent Bernoulli target: it exists with probability equal to its weight
/// (at most 1) and starts at a draw from its Gaussian. All carry the given flag.
struct InitialPopulation {
    GaussianMixture intensity;
    bool detected = false;
};

/// Runs the standard multitarget model for steps k = 1..steps.
/// Per step: survival and motion of existing targets, Poisson births drawn from the
/// birth mixture, detections with H/R noise, then uniform clutter over the box.
[[nodiscard]] Simulation simulate(const ScenarioModel& model, int steps, std::uint64_t seed,
                                  FlagTiming timing = FlagTiming::next_step, const InitialPopulation& initial = {});

struct GridTruthRecord {
    int k = 0;
    int point = 0;
    bool detected = false;
};

struct GridMeasurementRecord {
    int k = 0;
    PointSet Z;
};

struct GridSimulation {
    std::vector<GridTruthRecord> truth;  // k = 0 holds the initial state
    std::vector<GridMeasurementRecord> measurements;
};

/// Single target on a grid without clutter: initial (point, tag) drawn from the
/// tagged prior, then markov motion and detections with p_D and likelihood.
[[nodiscard]] GridSimulation simulate_grid(const GridModel& model, const TaggedGridDensity& prior, int steps,
                                           std::uint64_t seed, FlagTiming timing = FlagTiming::next_step);

}  // namespace udrfs
