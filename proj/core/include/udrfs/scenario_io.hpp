#pragma once

#include "udrfs/bayes_filter.hpp"
#include "udrfs/grid_model.hpp"
#include "udrfs/model.hpp"
#include "udrfs/simulator.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace udrfs {

struct FilterConfig {
    std::string kind = "dud";
    double prune = 1e-5;
    double merge = 4.0;
    std::size_t max_components = 100;
    /// Tag given to the initial intensity of the D-U/D PHD filter.
    UDTag initial_tag = UDTag::undetected;
};

/// Continuous scenario: the model plus run settings.
struct Scenario {
    ScenarioModel model;
    int steps = 1;
    std::uint64_t seed = 0;
    FilterConfig filter;
    FlagTiming flag_timing = FlagTiming::next_step;
    /// Optional intensity of the targets present before the first step.
    GaussianMixture initial;
};

/// Parses {state_dim, meas_dim, F, Q, H, R, p_d, p_s, clutter:{rate, region},
/// birth:[{w, mean, cov}], steps, seed} plus the optional "filter" and
/// "flag_timing" and "initial" entries. Throws ConfigError with the offending field.
[[nodiscard]] Scenario parse_scenario(const nlohmann::json& j);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Finite scenario for the grid filters and the exact calculus.
struct FiniteScenario {
    GridModel model;
    TaggedGridDensity prior;
    int steps = 1;
    std::uint64_t seed = 0;
    FlagTiming flag_timing = FlagTiming::next_step;
};

/// Parses {state_points, meas_points, markov, p_d, p_s, likelihood, clutter:{rate,
/// density}, birth, prior:{u, d}, steps, seed}. likelihood[x] is the measurement
/// distribution of state x. markov, p_s and birth are optional.
[[nodiscard]] FiniteScenario parse_finite_scenario(const nlohmann::json& j);
[[nodiscard]] FiniteScenario load_finite_scenario(const std::filesystem::path& path);

/// Reads a whole file; throws ConfigError("file", ...) if it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a hash.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace udrfs
