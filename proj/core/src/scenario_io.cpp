#include "udrfs/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace udrfs {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& prefix = "") {
    const std::string field = prefix + key;
    if (!j.is_object()) throw ConfigError(prefix.empty() ? "scenario" : prefix.substr(0, prefix.size() - 1), "must be an object");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(field, "missing");
    return *it;
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field, "must be an integer");
    return j.get<int>();
}

Eigen::VectorXd vector(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "must be an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

Eigen::MatrixXd matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ConfigError(field, "must be a nonempty row-major array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw ConfigError(field, "must be a nonempty row-major array of rows");
    const std::size_t cols = j[0].size();
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(rf, "rows must all have the same length");
        for (std::size_t c = 0; c < cols; ++c) {
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], rf + "[" + std::to_string(c) + "]");
        }
    }
    return A;
}

std::uint64_t seed_of(const json& j) {
    const json& s = require(j, "seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0))
        throw ConfigError("seed", "must be a nonnegative integer");
    return s.get<std::uint64_t>();
}

int steps_of(const json& j) {
    const int steps = integer(require(j, "steps"), "steps");
    if (steps < 1) throw ConfigError("steps", "must be at least 1");
    return steps;
}

FlagTiming flag_timing_of(const json& j) {
    auto it = j.find("flag_timing");
    if (it == j.end()) return FlagTiming::next_step;
    if (!it->is_string()) throw ConfigError("flag_timing", "must be \"next\" or \"same\"");
    const auto s = it->get<std::string>();
    if (s == "next") return FlagTiming::next_step;
    if (s == "same") return FlagTiming::same_step;
    throw ConfigError("flag_timing", "must be \"next\" or \"same\"");
}

std::vector<std::string> labels(const json& j, const std::string& field) {
    std::vector<std::string> out;
    if (j.is_number_integer()) {
        const int n = j.get<int>();
        if (n < 1) throw ConfigError(field, "must be positive");
        for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
        return out;
    }
    if (!j.is_array() || j.empty()) throw ConfigError(field, "must be a point count or a nonempty list of labels");
    for (const auto& e : j) {
        if (e.is_string()) out.push_back(e.get<std::string>());
        else if (e.is_number()) out.push_back(e.dump());
        else throw ConfigError(field, "labels must be strings or numbers");
    }
    return out;
}

GaussianMixture mixture(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "must be an array of components");
    GaussianMixture gm;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = field + "[" + std::to_string(i) + "].";
        GaussianComponent c;
        c.weight = number(require(j[i], "w", p), p + "w");
        c.mean = vector(require(j[i], "mean", p), p + "mean");
        c.cov = matrix(require(j[i], "cov", p), p + "cov");
        gm.add(std::move(c));
    }
    return gm;
}

}  // namespace

Scenario parse_scenario(const json& j) {
    Scenario s;
    ScenarioModel& m = s.model;
    m.state_dim = integer(require(j, "state_dim"), "state_dim");
    m.meas_dim = integer(require(j, "meas_dim"), "meas_dim");
    m.motion.F = matrix(require(j, "F"), "F");
    m.motion.Q = matrix(require(j, "Q"), "Q");
    m.measurement.H = matrix(require(j, "H"), "H");
    m.measurement.R = matrix(require(j, "R"), "R");
    m.measurement.p_d = number(require(j, "p_d"), "p_d");
    m.motion.p_s = number(require(j, "p_s"), "p_s");
    const json& clutter = require(j, "clutter");
    m.clutter.rate = number(require(clutter, "rate", "clutter."), "clutter.rate");
    const json& region = require(clutter, "region", "clutter.");
    if (region.is_object()) {
        m.clutter.lower = vector(require(region, "lower", "clutter.region."), "clutter.region.lower");
        m.clutter.upper = vector(require(region, "upper", "clutter.region."), "clutter.region.upper");
    } else if (region.is_array()) {
        // [[lo, hi], ...] per measurement dimension.
        m.clutter.lower.resize(static_cast<Eigen::Index>(region.size()));
        m.clutter.upper.resize(static_cast<Eigen::Index>(region.size()));
        for (std::size_t d = 0; d < region.size(); ++d) {
            const Eigen::VectorXd b = vector(region[d], "clutter.region[" + std::to_string(d) + "]");
            if (b.size() != 2) throw ConfigError("clutter.region[" + std::to_string(d) + "]", "must be [lower, upper]");
            m.clutter.lower[static_cast<Eigen::Index>(d)] = b[0];
            m.clutter.upper[static_cast<Eigen::Index>(d)] = b[1];
        }
    } else {
        throw ConfigError("clutter.region", "must be {lower, upper} or a list of [lower, upper] pairs");
    }
    m.birth = mixture(require(j, "birth"), "birth");
    if (auto it = j.find("initial"); it != j.end()) {
        s.initial = mixture(*it, "initial");
        for (std::size_t i = 0; i < s.initial.size(); ++i) {
            const std::string field = "initial[" + std::to_string(i) + "]";
            if (s.initial.components[i].mean.size() != m.state_dim) throw ConfigError(field, "mean must have state_dim entries");
            if (s.initial.components[i].weight > 1.0) throw ConfigError(field + ".w", "initial weights are existence probabilities and must not exceed 1");
            try {
                validate_component(s.initial.components[i]);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(field, e.what());
            }
        }
    }
    s.steps = steps_of(j);
    s.seed = seed_of(j);
    s.flag_timing = flag_timing_of(j);
    if (auto it = j.find("filter"); it != j.end()) {
        const json& f = *it;
        if (!f.is_object()) throw ConfigError("filter", "must be an object");
        if (auto k = f.find("kind"); k != f.end()) {
            if (!k->is_string()) throw ConfigError("filter.kind", "must be a string");
            s.filter.kind = k->get<std::string>();
        }
        if (auto p = f.find("prune"); p != f.end()) s.filter.prune = number(*p, "filter.prune");
        if (auto p = f.find("merge"); p != f.end()) s.filter.merge = number(*p, "filter.merge");
        if (auto p = f.find("max_components"); p != f.end()) {
            const int mc = integer(*p, "filter.max_components");
            if (mc < 1) throw ConfigError("filter.max_components", "must be at least 1");
            s.filter.max_components = static_cast<std::size_t>(mc);
        }
        if (auto p = f.find("initial_tag"); p != f.end()) {
            const std::string t = p->is_string() ? p->get<std::string>() : "";
            if (t == "undetected") s.filter.initial_tag = UDTag::undetected;
            else if (t == "detected") s.filter.initial_tag = UDTag::detected;
            else throw ConfigError("filter.initial_tag", "must be \"undetected\" or \"detected\"");
        }
        if (s.filter.prune < 0.0) throw ConfigError("filter.prune", "must be nonnegative");
        if (s.filter.merge < 0.0) throw ConfigError("filter.merge", "must be nonnegative");
    }
    validate(m);
    return s;
}

FiniteScenario parse_finite_scenario(const json& j) {
    FiniteScenario s;
    GridModel& g = s.model;
    g.state_labels = labels(require(j, "state_points"), "state_points");
    g.meas_labels = labels(require(j, "meas_points"), "meas_points");
    const auto n = static_cast<Eigen::Index>(g.state_labels.size());
    const auto m = static_cast<Eigen::Index>(g.meas_labels.size());

    if (auto it = j.find("markov"); it != j.end()) g.markov = matrix(*it, "markov");
    else g.markov = Eigen::MatrixXd::Identity(n, n);
    if (g.markov.rows() != n || g.markov.cols() != n) throw ConfigError("markov", "must be square with one row per state");

    const Eigen::MatrixXd lik = matrix(require(j, "likelihood"), "likelihood");
    if (lik.rows() != n || lik.cols() != m)
        throw ConfigError("likelihood", "needs one row per state and one entry per measurement point");
    g.likelihood = lik.transpose();

    g.p_d = vector(require(j, "p_d"), "p_d");
    if (auto it = j.find("p_s"); it != j.end()) g.p_s = vector(*it, "p_s");
    else g.p_s = Eigen::VectorXd::Ones(n);
    if (auto it = j.find("birth"); it != j.end()) g.birth = vector(*it, "birth");
    else g.birth = Eigen::VectorXd::Zero(n);

    const json& clutter = require(j, "clutter");
    g.clutter_rate = number(require(clutter, "rate", "clutter."), "clutter.rate");
    if (auto it = clutter.find("density"); it != clutter.end()) g.clutter_density = vector(*it, "clutter.density");
    else g.clutter_density = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    normalize_tables(g);

    const json& prior = require(j, "prior");
    const Eigen::VectorXd u = vector(require(prior, "u", "prior."), "prior.u");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    if (auto it = prior.find("d"); it != prior.end()) d = vector(*it, "prior.d");
    if (u.size() != n || d.size() != n) throw ConfigError("prior", "u and d need one entry per state");
    if (!(u.array() >= 0.0).all() || !(d.array() >= 0.0).all()) throw ConfigError("prior", "entries must be nonnegative");
    const double total = u.sum() + d.sum();
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("prior", "u and d together must sum to 1");
    std::vector<double> values(2 * static_cast<std::size_t>(n));
    for (Eigen::Index x = 0; x < n; ++x) {
        values[static_cast<std::size_t>(2 * x)] = u[x] / total;
        values[static_cast<std::size_t>(2 * x + 1)] = d[x] / total;
    }
    s.prior = TaggedGridDensity(std::move(values));
    s.steps = steps_of(j);
    s.seed = seed_of(j);
    s.flag_timing = flag_timing_of(j);
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("file", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("json", e.what());
    }
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(parse_json_text(read_file(path))); }

FiniteScenario load_finite_scenario(const std::filesystem::path& path) {
    return parse_finite_scenario(parse_json_text(read_file(path)));
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace udrfs
