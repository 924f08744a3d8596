#include "udrfs/harness/commands.hpp"

#include "udrfs/harness/pipeline.hpp"
#include "udrfs/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>

namespace udrfs::harness {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write " + path.string());
    f << text;
}

std::string case_line(const CaseOutcome& o) {
    std::string line = std::string(o.pass ? "PASS " : "FAIL ") + o.name + " [" + o.paper_eq +
                       "] max_abs_error=" + format_double(o.max_abs_error) + " tolerance=" + format_double(o.tolerance);
    if (!o.failure.empty()) line += " (" + o.failure + ")";
    return line;
}

/// Runs `body`, translating the documented error classes into exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Divergence& e) {
        err << "divergence: " << e.what() << '\n';
        return kDivergence;
    } catch (const std::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kDivergence;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }
}

bool is_grid_kind(const std::string& kind) { return kind == "grid-dud"; }

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err, const RegistryOptions& registry) {
    std::vector<VerificationCase> cases = verification_registry(registry);
    if (!options.case_name.empty()) {
        auto it = std::find_if(cases.begin(), cases.end(),
                               [&](const VerificationCase& c) { return c.name == options.case_name; });
        if (it == cases.end()) {
            err << "unknown case: " << options.case_name << '\n';
            return kUsageError;
        }
        cases = {*it};
    }
    const std::vector<CaseOutcome> outcomes = run_cases(cases, thread_cap());
    bool all_pass = true;
    for (const auto& o : outcomes) {
        out << case_line(o) << '\n';
        all_pass = all_pass && o.pass;
    }
    if (!options.json_path.empty()) {
        std::ofstream f(options.json_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << options.json_path << '\n';
            return kUsageError;
        }
        f << verification_report(outcomes).dump(2) << '\n';
    }
    return all_pass ? kPass : kVerificationFailure;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_file(options.scenario);
        const fs::path dir(options.out_dir);
        fs::create_directories(dir);
        const std::string hash = scenario_hash(bytes);
        const nlohmann::json doc = [&] {
            try {
                return nlohmann::json::parse(bytes);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError("json", e.what());
            }
        }();

        std::string kind = options.filter;
        if (kind.empty()) {
            auto f = doc.find("filter");
            kind = f != doc.end() && f->is_object() && f->contains("kind") && f->at("kind").is_string()
                       ? f->at("kind").get<std::string>()
                       : std::string("dud");
        }

        const auto start = std::chrono::steady_clock::now();
        auto elapsed = [&]() -> std::optional<double> {
            if (!options.timing) return std::nullopt;
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };

        if (is_grid_kind(kind)) {
            FiniteScenario scenario = parse_finite_scenario(doc);
            if (options.seed) scenario.seed = *options.seed;
            const GridRun run = run_grid_dud(scenario);
            const auto seconds = elapsed();
            write_file(dir / "truth.jsonl", grid_truth_jsonl(scenario, run));
            write_file(dir / "measurements.jsonl", grid_measurements_jsonl(scenario, run));
            write_file(dir / "tracks.csv", grid_tracks_csv(scenario, run));
            write_file(dir / "posterior.csv", grid_posterior_csv(scenario, run));
            write_file(dir / "report.json", grid_run_report(hash, scenario, run, seconds).dump(2) + '\n');
            out << "grid-dud: " << run.posteriors.size() << " steps written to " << dir.string() << '\n';
            return static_cast<int>(kPass);
        }

        if (std::find(gm_filter_kinds().begin(), gm_filter_kinds().end(), kind) == gm_filter_kinds().end())
            throw ConfigError("filter", "unknown filter kind \"" + kind + "\"");
        Scenario scenario = parse_scenario(doc);
        if (options.seed) scenario.seed = *options.seed;
        const Simulation sim = simulate_scenario(scenario);
        const RunResult run = run_gm_filter(scenario, kind, sim);
        const auto seconds = elapsed();
        write_file(dir / "truth.jsonl", truth_jsonl(sim));
        write_file(dir / "measurements.jsonl", measurements_jsonl(sim));
        write_file(dir / "tracks.csv", tracks_csv(run));
        write_file(dir / "report.json", run_report(hash, scenario.seed, run, seconds).dump(2) + '\n');
        const ErrorSummary e = mean_errors(run);
        out << kind << ": " << run.rows.size() << " steps, mean |count error| " << format_double(e.cardinality)
            << ", mean |D-count error| " << format_double(e.detected) << '\n';
        return static_cast<int>(kPass);
    });
}

int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err) {
    if (options.filters.size() < 2) {
        err << "usage error: compare needs at least two filters\n";
        return kUsageError;
    }
    return guarded(err, [&] {
        for (const auto& f : options.filters) {
            if (std::find(gm_filter_kinds().begin(), gm_filter_kinds().end(), f) == gm_filter_kinds().end())
                throw ConfigError("filters", "unknown or unsupported filter kind \"" + f + "\"");
        }
        Scenario scenario = load_scenario(options.scenario);
        if (options.seed) scenario.seed = *options.seed;
        std::vector<double> sweep = options.pd_sweep;
        if (sweep.empty()) sweep.push_back(scenario.model.measurement.p_d);

        std::string csv = "filter,p_d,steps,mean_abs_cardinality_error,mean_abs_detected_error,mean_abs_undetected_error\n";
        for (const auto& kind : options.filters) {
            for (double pd : sweep) {
                Scenario s = scenario;
                s.model.measurement.p_d = pd;
                validate(s.model);
                const RunResult run = run_gm_filter(s, kind, simulate_scenario(s));
                const ErrorSummary e = mean_errors(run);
                csv += kind + ',' + format_double(pd) + ',' + std::to_string(run.rows.size()) + ',' +
                       format_double(e.cardinality) + ',' + format_double(e.detected) + ',' + format_double(e.undetected) + '\n';
            }
        }
        write_file(options.out, csv);
        out << csv;
        return static_cast<int>(kPass);
    });
}

int run_cli(int argc, char** argv) {
    CLI::App app{"udrfs: undetected/detected random-finite-set filters and their verification suite"};
    app.require_subcommand(1);

    VerifyOptions verify;
    bool verify_all = false;
    std::string positional_case;
    auto* v = app.add_subcommand("verify", "run the identity verification suite");
    v->add_option("name", positional_case, "case to run (same as --case)");
    v->add_option("--case", verify.case_name, "run only this case");
    v->add_option("--json", verify.json_path, "write the JSON report here");
    v->add_flag("--all", verify_all, "run every case (the default)");

    RunOptions run;
    std::uint64_t run_seed = 0;
    auto* r = app.add_subcommand("run", "simulate a scenario and run one filter");
    r->add_option("--scenario", run.scenario, "scenario JSON file")->required();
    r->add_option("--filter", run.filter, "standard|sud|dud|bernoulli|dud-bernoulli|grid-dud")
        ->check(CLI::IsMember({"standard", "sud", "dud", "bernoulli", "dud-bernoulli", "grid-dud"}));
    r->add_option("--out", run.out_dir, "output directory")->required();
    auto* run_seed_opt = r->add_option("--seed", run_seed, "override the scenario seed");
    r->add_flag("--timing", run.timing, "record wall-clock time in report.json");

    CompareOptions compare;
    std::uint64_t compare_seed = 0;
    std::string filters;
    std::string sweep;
    auto* c = app.add_subcommand("compare", "compare filters on the same simulated scans");
    c->add_option("--scenario", compare.scenario, "scenario JSON file")->required();
    c->add_option("--filters", filters, "comma-separated filter kinds")->required();
    c->add_option("--out", compare.out, "output CSV file")->required();
    c->add_option("--pd-sweep", sweep, "comma-separated detection probabilities");
    auto* compare_seed_opt = c->add_option("--seed", compare_seed, "override the scenario seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? static_cast<int>(kPass) : static_cast<int>(kUsageError);
    }

    if (v->parsed()) {
        if (!positional_case.empty()) {
            if (!verify.case_name.empty() && verify.case_name != positional_case) {
                std::cerr << "usage error: conflicting case names\n";
                return kUsageError;
            }
            verify.case_name = positional_case;
        }
        if (verify_all && !verify.case_name.empty()) {
            std::cerr << "usage error: --all cannot be combined with a case name\n";
            return kUsageError;
        }
        return cmd_verify(verify, std::cout, std::cerr);
    }
    if (r->parsed()) {
        if (*run_seed_opt) run.seed = run_seed;
        return cmd_run(run, std::cout, std::cerr);
    }
    compare.filters = CLI::detail::split(filters, ',');
    if (!sweep.empty()) {
        for (const auto& item : CLI::detail::split(sweep, ',')) {
            double pd = 0.0;
            const auto res = std::from_chars(item.data(), item.data() + item.size(), pd);
            if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
                std::cerr << "usage error: bad --pd-sweep entry \"" << item << "\"\n";
                return kUsageError;
            }
            compare.pd_sweep.push_back(pd);
        }
    }
    if (*compare_seed_opt) compare.seed = compare_seed;
    return cmd_compare(compare, std::cout, std::cerr);
}

}  // namespace udrfs::harness
