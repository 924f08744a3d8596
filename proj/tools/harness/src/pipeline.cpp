#include "udrfs/harness/pipeline.hpp"

#include "udrfs/bayes_filter.hpp"
#include "udrfs/intensity.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace udrfs::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kReferenceScenario = R"({
  "state_dim": 4,
  "meas_dim": 2,
  "F": [[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
  "Q": [[0.1, 0, 0.15, 0], [0, 0.1, 0, 0.15], [0.15, 0, 0.3, 0], [0, 0.15, 0, 0.3]],
  "H": [[1, 0, 0, 0], [0, 1, 0, 0]],
  "R": [[4, 0], [0, 4]],
  "p_d": 0.98,
  "p_s": 0.99,
  "clutter": {"rate": 2.0, "region": [[-150, 150], [-150, 150]]},
  "birth": [
    {"w": 0.04, "mean": [-60, -60, 2, 1.5], "cov": [[25, 0, 0, 0], [0, 25, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
    {"w": 0.04, "mean": [60, -60, -1.5, 2], "cov": [[25, 0, 0, 0], [0, 25, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
    {"w": 0.04, "mean": [0, 60, 0, -2], "cov": [[25, 0, 0, 0], [0, 25, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}
  ],
  "initial": [
    {"w": 1.0, "mean": [-40, 0, 1.5, 0.5], "cov": [[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 0.25, 0], [0, 0, 0, 0.25]]},
    {"w": 1.0, "mean": [40, 10, -1.5, 0], "cov": [[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 0.25, 0], [0, 0, 0, 0.25]]}
  ],
  "steps": 40,
  "seed": 42,
  "flag_timing": "same",
  "filter": {"kind": "dud", "prune": 1e-5, "merge": 4.0, "max_components": 100, "initial_tag": "undetected"}
}
)";

bool finite_mixture(const GaussianMixture& gm) {
    return std::all_of(gm.components.begin(), gm.components.end(), [](const GaussianComponent& c) {
        return std::isfinite(c.weight) && c.mean.allFinite() && c.cov.allFinite();
    });
}

void check_finite(bool ok, int k) {
    if (!ok) throw Divergence("non-finite intensity at step " + std::to_string(k));
}

bool is_bernoulli(const std::string& kind) { return kind == "bernoulli" || kind == "dud-bernoulli"; }

std::string vector_text(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ';';
        out += format_double(v[i]);
    }
    return out;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

std::string tag_string(const StateEstimate& est) {
    std::string out;
    for (const auto& s : est.states) out += static_cast<char>('0' + tag_value(s.tag));
    return out;
}

}  // namespace

const std::vector<std::string>& gm_filter_kinds() {
    static const std::vector<std::string> kinds{"standard", "sud", "dud", "bernoulli", "dud-bernoulli"};
    return kinds;
}

int StepRow::detected_count() const {
    return static_cast<int>(std::count_if(estimate.states.begin(), estimate.states.end(),
                                          [](const UDState& s) { return s.tag == UDTag::detected; }));
}

int StepRow::undetected_count() const { return static_cast<int>(estimate.states.size()) - detected_count(); }

Simulation simulate_scenario(const Scenario& scenario) {
    InitialPopulation initial{scenario.initial, scenario.filter.initial_tag == UDTag::detected};
    return simulate(scenario.model, scenario.steps, scenario.seed, scenario.flag_timing, initial);
}

RunResult run_gm_filter(const Scenario& scenario, const std::string& kind, const Simulation& sim) {
    if (std::find(gm_filter_kinds().begin(), gm_filter_kinds().end(), kind) == gm_filter_kinds().end())
        throw std::invalid_argument("unknown filter kind: " + kind);
    if (is_bernoulli(kind) && gm_mass(scenario.initial) > 1.0)
        throw ConfigError("initial", "Bernoulli filters need an initial mass of at most 1");

    const ScenarioModel& model = scenario.model;
    const FilterConfig& cfg = scenario.filter;
    auto reduce_gm = [&](const GaussianMixture& gm) {
        return gm_reduce(gm, cfg.prune, cfg.merge, cfg.max_components);
    };

    GaussianMixture D = scenario.initial;
    UDMixture tagged;
    (cfg.initial_tag == UDTag::detected ? tagged.d_part : tagged.u_part) = scenario.initial;

    RunResult out;
    out.filter = kind;
    for (std::size_t i = 0; i < sim.measurements.size(); ++i) {
        const MeasurementList& Z = sim.measurements[i].Z;
        StepRow row;
        row.k = sim.measurements[i].k;
        if (kind == "standard") {
            D = reduce_gm(phd_update(phd_predict(D, model), Z, model));
            check_finite(finite_mixture(D), row.k);
            row.estimate = estimate(D);
            row.total_mass = gm_mass(D);
        } else if (kind == "sud") {
            const MixtureSplit split = sud_phd_step(D, Z, model);
            D = reduce_gm(split.total);
            check_finite(finite_mixture(D), row.k);
            row.total_mass = gm_mass(D);
            row.estimate = dud_estimate(UDMixture{reduce_gm(split.detected), reduce_gm(split.undetected)}, row.total_mass);
        } else if (kind == "dud") {
            tagged = reduce(dud_phd_step(tagged, Z, model), cfg.prune, cfg.merge, cfg.max_components);
            check_finite(finite_mixture(tagged.d_part) && finite_mixture(tagged.u_part), row.k);
            row.estimate = dud_estimate(tagged);
            row.total_mass = gm_mass(tagged.d_part) + gm_mass(tagged.u_part);
        } else if (kind == "bernoulli") {
            D = reduce_gm(bernoulli_single_step(D, Z, model));
            check_finite(finite_mixture(D), row.k);
            row.estimate = estimate(D);
            row.total_mass = gm_mass(D);
        } else {
            tagged = reduce(dud_bernoulli_single_step(tagged, Z, model), cfg.prune, cfg.merge, cfg.max_components);
            check_finite(finite_mixture(tagged.d_part) && finite_mixture(tagged.u_part), row.k);
            row.estimate = dud_estimate(tagged);
            row.total_mass = gm_mass(tagged.d_part) + gm_mass(tagged.u_part);
        }
        check_finite(std::isfinite(row.total_mass), row.k);
        const TruthRecord& truth = sim.truth[i];
        row.true_count = static_cast<int>(truth.targets.size());
        row.true_detected = static_cast<int>(std::count_if(truth.targets.begin(), truth.targets.end(),
                                                           [](const TruthTarget& t) { return t.detected; }));
        row.true_undetected = row.true_count - row.true_detected;
        out.rows.push_back(std::move(row));
    }
    return out;
}

ErrorSummary mean_errors(const RunResult& run) {
    ErrorSummary e;
    if (run.rows.empty()) return e;
    for (const auto& r : run.rows) {
        e.cardinality += std::abs(r.estimate.count - r.true_count);
        e.detected += std::abs(r.detected_count() - r.true_detected);
        e.undetected += std::abs(r.undetected_count() - r.true_undetected);
    }
    const double n = static_cast<double>(run.rows.size());
    e.cardinality /= n;
    e.detected /= n;
    e.undetected /= n;
    return e;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string tracks_csv(const RunResult& run) {
    std::string out = "k,tag,count_estimate,total_mass,d_count,u_count,under_resolved,states\n";
    for (const auto& r : run.rows) {
        std::string states;
        for (const auto& s : r.estimate.states) {
            if (!states.empty()) states += ' ';
            states += std::to_string(tag_value(s.tag)) + ':' + vector_text(s.x);
        }
        out += std::to_string(r.k) + ',' + tag_string(r.estimate) + ',' + std::to_string(r.estimate.count) + ',' +
               format_double(r.total_mass) + ',' + std::to_string(r.detected_count()) + ',' +
               std::to_string(r.undetected_count()) + ',' + (r.estimate.under_resolved ? "1" : "0") + ',' + states + '\n';
    }
    return out;
}

std::string truth_jsonl(const Simulation& sim) {
    std::string out;
    for (const auto& rec : sim.truth) {
        ordered_json line;
        line["k"] = rec.k;
        line["targets"] = ordered_json::array();
        for (const auto& t : rec.targets) {
            ordered_json target;
            target["id"] = t.id;
            target["x"] = vector_json(t.x);
            target["detected"] = t.detected;
            line["targets"].push_back(std::move(target));
        }
        out += line.dump() + '\n';
    }
    return out;
}

std::string measurements_jsonl(const Simulation& sim) {
    std::string out;
    for (const auto& rec : sim.measurements) {
        ordered_json line;
        line["k"] = rec.k;
        line["measurements"] = ordered_json::array();
        for (const auto& z : rec.Z) line["measurements"].push_back(vector_json(z));
        line["origins"] = rec.origins;
        out += line.dump() + '\n';
    }
    return out;
}

std::string scenario_hash(std::string_view scenario_bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(scenario_bytes)));
    return buf;
}

ordered_json run_report(const std::string& hash, std::uint64_t seed, const RunResult& run,
                        std::optional<double> seconds) {
    ordered_json rep;
    rep["scenario_hash"] = hash;
    rep["seed"] = seed;
    rep["filter"] = run.filter;
    rep["steps"] = run.rows.size();
    rep["per_step"] = ordered_json::array();
    for (const auto& r : run.rows) {
        ordered_json s;
        s["k"] = r.k;
        s["true_count"] = r.true_count;
        s["estimated_count"] = r.estimate.count;
        s["true_detected"] = r.true_detected;
        s["estimated_detected"] = r.detected_count();
        s["true_undetected"] = r.true_undetected;
        s["estimated_undetected"] = r.undetected_count();
        s["total_mass"] = r.total_mass;
        rep["per_step"].push_back(std::move(s));
    }
    const ErrorSummary e = mean_errors(run);
    rep["summary"] = {{"mean_abs_cardinality_error", e.cardinality},
                      {"mean_abs_detected_error", e.detected},
                      {"mean_abs_undetected_error", e.undetected}};
    if (seconds) rep["timing"] = {{"filter_seconds", *seconds}};
    return rep;
}

GridRun run_grid_dud(const FiniteScenario& scenario) {
    if (scenario.model.clutter_rate != 0.0)
        throw ConfigError("clutter.rate", "the grid D-U/D filter is single-target and clutter-free; rate must be 0");
    GridRun run;
    run.sim = simulate_grid(scenario.model, scenario.prior, scenario.steps, scenario.seed, scenario.flag_timing);
    TaggedGridDensity current = scenario.prior;
    for (const auto& meas : run.sim.measurements) {
        current = dud_single_step(current, meas.Z, scenario.model).posterior;
        run.posteriors.push_back(current);
    }
    return run;
}

namespace {

/// Most probable (point, tag); ties go to the lower point, then to the detected tag.
std::pair<int, int> grid_mode(const TaggedGridDensity& f) {
    int best_x = 0;
    int best_o = 1;
    double best = -1.0;
    for (int x = 0; x < f.num_states(); ++x) {
        for (int o : {1, 0}) {
            if (f.at(x, o) > best) {
                best = f.at(x, o);
                best_x = x;
                best_o = o;
            }
        }
    }
    return {best_x, best_o};
}

}  // namespace

std::string grid_truth_jsonl(const FiniteScenario& scenario, const GridRun& run) {
    std::string out;
    for (const auto& rec : run.sim.truth) {
        ordered_json line;
        line["k"] = rec.k;
        line["point"] = scenario.model.state_labels[static_cast<std::size_t>(rec.point)];
        line["detected"] = rec.detected;
        out += line.dump() + '\n';
    }
    return out;
}

std::string grid_measurements_jsonl(const FiniteScenario& scenario, const GridRun& run) {
    std::string out;
    for (const auto& rec : run.sim.measurements) {
        ordered_json line;
        line["k"] = rec.k;
        line["measurements"] = ordered_json::array();
        rec.Z.for_each([&](int z) { line["measurements"].push_back(scenario.model.meas_labels[static_cast<std::size_t>(z)]); });
        out += line.dump() + '\n';
    }
    return out;
}

std::string grid_posterior_csv(const FiniteScenario& scenario, const GridRun& run) {
    std::string out = "k,point,o,mass\n";
    for (std::size_t i = 0; i < run.posteriors.size(); ++i) {
        const TaggedGridDensity& f = run.posteriors[i];
        for (int x = 0; x < f.num_states(); ++x) {
            for (int o : {0, 1}) {
                out += std::to_string(run.sim.measurements[i].k) + ',' +
                       scenario.model.state_labels[static_cast<std::size_t>(x)] + ',' + std::to_string(o) + ',' +
                       format_double(f.at(x, o)) + '\n';
            }
        }
    }
    return out;
}

std::string grid_tracks_csv(const FiniteScenario& scenario, const GridRun& run) {
    std::string out = "k,tag,count_estimate,total_mass,d_count,u_count,under_resolved,states\n";
    for (std::size_t i = 0; i < run.posteriors.size(); ++i) {
        const auto [x, o] = grid_mode(run.posteriors[i]);
        out += std::to_string(run.sim.measurements[i].k) + ',' + std::to_string(o) + ",1," +
               format_double(run.posteriors[i].total()) + ',' + (o == 1 ? "1,0" : "0,1") + ",0," + std::to_string(o) +
               ':' + scenario.model.state_labels[static_cast<std::size_t>(x)] + '\n';
    }
    return out;
}

ordered_json grid_run_report(const std::string& hash, const FiniteScenario& scenario, const GridRun& run,
                             std::optional<double> seconds) {
    ordered_json rep;
    rep["scenario_hash"] = hash;
    rep["seed"] = scenario.seed;
    rep["filter"] = "grid-dud";
    rep["steps"] = run.posteriors.size();
    rep["per_step"] = ordered_json::array();
    double tag_error = 0.0;
    for (std::size_t i = 0; i < run.posteriors.size(); ++i) {
        const GridTruthRecord& truth = run.sim.truth[i + 1];
        const auto [x, o] = grid_mode(run.posteriors[i]);
        ordered_json s;
        s["k"] = truth.k;
        s["true_point"] = scenario.model.state_labels[static_cast<std::size_t>(truth.point)];
        s["true_detected"] = truth.detected;
        s["estimated_point"] = scenario.model.state_labels[static_cast<std::size_t>(x)];
        s["estimated_detected"] = o == 1;
        s["detected_probability"] = run.posteriors[i].tag_mass(1);
        rep["per_step"].push_back(std::move(s));
        tag_error += (o == 1) != truth.detected ? 1.0 : 0.0;
    }
    if (!run.posteriors.empty()) tag_error /= static_cast<double>(run.posteriors.size());
    rep["summary"] = {{"tag_error_rate", tag_error}};
    if (seconds) rep["timing"] = {{"filter_seconds", *seconds}};
    return rep;
}

std::string_view reference_scenario_json() { return kReferenceScenario; }

Scenario reference_scenario() { return parse_scenario(nlohmann::json::parse(kReferenceScenario)); }

}  // namespace udrfs::harness
