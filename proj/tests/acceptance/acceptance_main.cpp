// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "udrfs/harness/pipeline.hpp"
#include "udrfs/harness/verification.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

namespace {

using namespace udrfs;
using namespace udrfs::harness;

/// Criterion 14 also pins the reference run byte-for-byte against the frozen tracks.
std::string baseline_mismatch() {
    const std::filesystem::path baseline = std::filesystem::path(UDRFS_TEST_DATA_DIR) / "reference_seed42_tracks.csv";
    const Scenario s = reference_scenario();
    const std::string produced = tracks_csv(run_gm_filter(s, s.filter.kind, simulate_scenario(s)));
    const std::string frozen = read_file(baseline);
    if (produced == frozen) return {};
    const auto at = std::mismatch(produced.begin(), produced.end(), frozen.begin(), frozen.end());
    return "tracks differ from the frozen baseline at byte " + std::to_string(at.first - produced.begin());
}

}  // namespace

int main() {
    const std::vector<VerificationCase> registry = verification_registry();
    std::map<std::string, const VerificationCase*> by_name;
    for (const auto& c : registry) by_name[c.name] = &c;

    bool all_pass = true;
    for (const Criterion& criterion : acceptance_criteria()) {
        std::vector<VerificationCase> cases;
        std::string problem;
        for (const auto& name : criterion.cases) {
            auto it = by_name.find(name);
            if (it == by_name.end()) problem = "case " + name + " is not registered";
            else cases.push_back(*it->second);
        }
        bool pass = problem.empty();
        double worst_ratio = 0.0;
        std::string detail;
        for (const CaseOutcome& o : run_cases(cases, thread_cap())) {
            pass = pass && o.pass;
            worst_ratio = std::max(worst_ratio, o.max_abs_error / o.tolerance);
            detail += " " + o.name + "=" + format_double(o.max_abs_error) + "/" + format_double(o.tolerance);
            if (!o.failure.empty()) problem = o.name + ": " + o.failure;
        }
        if (criterion.id == 14) {
            const std::string mismatch = baseline_mismatch();
            if (!mismatch.empty()) {
                pass = false;
                problem = mismatch;
            }
        }
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " AC" << criterion.id << " " << criterion.title << " |" << detail;
        if (!problem.empty()) std::cout << " (" << problem << ")";
        std::cout << '\n';
    }
    std::cout << (all_pass ? "all acceptance criteria pass" : "acceptance criteria FAILED") << '\n';
    return all_pass ? 0 : 1;
}
