#pragma once

#include "udrfs/phd.hpp"
#include "udrfs/scenario_io.hpp"
#include "udrfs/simulator.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace udrfs::harness {

/// Non-finite intensity during a filter run.
class Divergence : public std::runtime_error {
public:
    explicit Divergence(const std::string& what) : std::runtime_error(what) {}
};

/// Filters that run on continuous scenarios.
[[nodiscard]] const std::vector<std::string>& gm_filter_kinds();

struct StepRow {
    int k = 0;
    StateEstimate estimate;
    double total_mass = 0.0;
    int true_count = 0;
    int true_detected = 0;
    int true_undetected = 0;

    [[nodiscard]] int detected_count() const;
    [[nodiscard]] int undetected_count() const;
};

struct RunResult {
    std::string filter;
    std::vector<StepRow> rows;
};

struct ErrorSummary {
    double cardinality = 0.0;
    double detected = 0.0;
    double undetected = 0.0;
};

/// Runs one of gm_filter_kinds() over a simulated scan sequence.
/// Throws Divergence on a non-finite intensity and std::invalid_argument on an unknown kind.
[[nodiscard]] RunResult run_gm_filter(const Scenario& scenario, const std::string& kind, const Simulation& sim);

/// Simulates the scenario with its own seed and flag timing.
[[nodiscard]] Simulation simulate_scenario(const Scenario& scenario);

[[nodiscard]] ErrorSummary mean_errors(const RunResult& run);

/// Shortest round-trip decimal form, independent of the locale.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string tracks_csv(const RunResult& run);
[[nodiscard]] std::string truth_jsonl(const Simulation& sim);
[[nodiscard]] std::string measurements_jsonl(const Simulation& sim);

/// Hex form of fnv1a64 over the scenario bytes.
[[nodiscard]] std::string scenario_hash(std::string_view scenario_bytes);

[[nodiscard]] nlohmann::ordered_json run_report(const std::string& hash, std::uint64_t seed, const RunResult& run,
                                                std::optional<double> seconds);

/// Grid-mode D-U/D Bayes filter run on a finite scenario.
struct GridRun {
    GridSimulation sim;
    /// Posterior after each scan, k = 1..steps.
    std::vector<TaggedGridDensity> posteriors;
};

[[nodiscard]] GridRun run_grid_dud(const FiniteScenario& scenario);

[[nodiscard]] std::string grid_truth_jsonl(const FiniteScenario& scenario, const GridRun& run);
[[nodiscard]] std::string grid_measurements_jsonl(const FiniteScenario& scenario, const GridRun& run);
[[nodiscard]] std::string grid_posterior_csv(const FiniteScenario& scenario, const GridRun& run);
/// One row per step with the most probable (point, tag) as the single state estimate.
[[nodiscard]] std::string grid_tracks_csv(const FiniteScenario& scenario, const GridRun& run);
[[nodiscard]] nlohmann::ordered_json grid_run_report(const std::string& hash, const FiniteScenario& scenario,
                                                     const GridRun& run, std::optional<double> seconds);

/// The seeded reference scenario (dud filter, high p_D, low clutter) as JSON text.
[[nodiscard]] std::string_view reference_scenario_json();
[[nodiscard]] Scenario reference_scenario();

}  // namespace udrfs::harness
