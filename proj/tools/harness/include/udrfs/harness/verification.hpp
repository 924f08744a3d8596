#pragma once

#include "udrfs/transition.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace udrfs::harness {

/// One registered identity check. `run` returns the largest error it observed.
struct VerificationCase {
    std::string name;
    std::string paper_eq;
    double tolerance = 0.0;
    /// Cap and grid sizes the check enumerates.
    std::string scale;
    std::function<double()> run;
};

struct CaseOutcome {
    std::string name;
    std::string paper_eq;
    std::string scale;
    double tolerance = 0.0;
    double max_abs_error = 0.0;
    bool pass = false;
    /// Exception text when the check threw; empty otherwise.
    std::string failure;
};

struct RegistryOptions {
    /// Single-target tagged JTF under test; swapped out by fault-injection tests.
    SingleTargetJtf jtf = nud_jtf;
};

[[nodiscard]] std::vector<VerificationCase> verification_registry(const RegistryOptions& options = {});

/// Runs the cases on up to max_threads workers; outcomes keep the input order.
[[nodiscard]] std::vector<CaseOutcome> run_cases(const std::vector<VerificationCase>& cases, unsigned max_threads);

/// Worker count: UDRFS_THREADS when set to a positive integer, else the hardware concurrency.
[[nodiscard]] unsigned thread_cap();

/// {"cases": [{name, paper_eq, max_abs_error, tolerance, pass}], "passed", "failed", "all_pass"}.
[[nodiscard]] nlohmann::ordered_json verification_report(const std::vector<CaseOutcome>& outcomes);

/// An acceptance criterion and the registry cases that decide it.
struct Criterion {
    int id = 0;
    std::string title;
    std::vector<std::string> cases;
};

[[nodiscard]] const std::vector<Criterion>& acceptance_criteria();

}  // namespace udrfs::harness
