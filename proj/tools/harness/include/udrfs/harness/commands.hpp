#pragma once

#include "udrfs/harness/verification.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace udrfs::harness {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2, kDivergence = 3 };

struct VerifyOptions {
    /// Empty runs every case.
    std::string case_name;
    /// Empty skips the JSON file.
    std::string json_path;
};

/// Runs the registry (or one case), prints one line per case and optionally writes the JSON report.
[[nodiscard]] int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err,
                             const RegistryOptions& registry = {});

struct RunOptions {
    std::string scenario;
    /// Empty uses the scenario's filter.kind.
    std::string filter;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

/// Simulates the scenario, runs the filter and writes truth.jsonl,
/// measurements.jsonl, tracks.csv and report.json (grid-dud adds posterior.csv).
[[nodiscard]] int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct CompareOptions {
    std::string scenario;
    std::vector<std::string> filters;
    std::string out;
    /// Detection probabilities to sweep; empty uses the scenario's own p_D.
    std::vector<double> pd_sweep;
    std::optional<std::uint64_t> seed;
};

/// Runs every filter on the same simulated scans and writes one CSV row per (filter, p_D).
[[nodiscard]] int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches.
[[nodiscard]] int run_cli(int argc, char** argv);

}  // namespace udrfs::harness
