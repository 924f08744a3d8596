#include "udrfs/grid_model.hpp"

#include "udrfs/model.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <cmath>
#include <map>

namespace udrfs {

namespace {

constexpr double kTableTolerance = 1e-9;

void require_probability_table(const Eigen::VectorXd& v, Eigen::Index n, const char* field) {
    if (v.size() != n) throw ConfigError(field, "expected " + std::to_string(n) + " entries");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(v[i] >= 0.0 && v[i] <= 1.0)) throw ConfigError(field, "entries must lie in [0, 1]");
    }
}

void require_nonnegative(const Eigen::MatrixXd& A, const char* field) {
    if (!(A.array() >= 0.0).all() || !A.allFinite())
        throw ConfigError(field, "entries must be finite and nonnegative");
}

}  // namespace

void normalize_tables(GridModel& model) {
    const Eigen::Index n = model.markov.rows();
    const Eigen::Index m = model.likelihood.rows();
    if (n <= 0) throw ConfigError("markov", "needs at least one state");
    if (model.markov.cols() != n) throw ConfigError("markov", "must be square");
    if (model.likelihood.cols() != n) throw ConfigError("likelihood", "needs one column per state");
    if (m <= 0) throw ConfigError("likelihood", "needs at least one measurement point");
    require_nonnegative(model.markov, "markov");
    require_nonnegative(model.likelihood, "likelihood");
    for (Eigen::Index r = 0; r < n; ++r) {
        const double s = model.markov.row(r).sum();
        if (std::abs(s - 1.0) > kTableTolerance) throw ConfigError("markov", "row " + std::to_string(r) + " does not sum to 1");
        model.markov.row(r) /= s;
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        const double s = model.likelihood.col(c).sum();
        if (std::abs(s - 1.0) > kTableTolerance)
            throw ConfigError("likelihood", "column " + std::to_string(c) + " does not sum to 1");
        model.likelihood.col(c) /= s;
    }
    require_probability_table(model.p_s, n, "p_s");
    require_probability_table(model.p_d, n, "p_d");
    if (model.birth.size() != n) throw ConfigError("birth", "expected one entry per state");
    require_nonnegative(model.birth, "birth");
    if (!(model.clutter_rate >= 0.0) || !std::isfinite(model.clutter_rate))
        throw ConfigError("clutter.rate", "must be finite and nonnegative");
    if (model.clutter_density.size() != m) throw ConfigError("clutter.density", "needs one entry per measurement point");
    require_nonnegative(model.clutter_density, "clutter.density");
    const double cs = model.clutter_density.sum();
    if (std::abs(cs - 1.0) > kTableTolerance) throw ConfigError("clutter.density", "must sum to 1");
    model.clutter_density /= cs;
    if (model.state_labels.empty()) {
        for (Eigen::Index i = 0; i < n; ++i) model.state_labels.push_back(std::to_string(i));
    }
    if (model.meas_labels.empty()) {
        for (Eigen::Index i = 0; i < m; ++i) model.meas_labels.push_back(std::to_string(i));
    }
    if (static_cast<Eigen::Index>(model.state_labels.size()) != n)
        throw ConfigError("state_points", "label count does not match the tables");
    if (static_cast<Eigen::Index>(model.meas_labels.size()) != m)
        throw ConfigError("meas_points", "label count does not match the tables");
}

GridModel make_grid_model(int n_states, int n_meas) {
    GridModel g;
    g.markov = Eigen::MatrixXd::Identity(n_states, n_states);
    g.likelihood = Eigen::MatrixXd::Constant(n_meas, n_states, 1.0 / n_meas);
    g.p_s = Eigen::VectorXd::Ones(n_states);
    g.p_d = Eigen::VectorXd::Constant(n_states, 0.5);
    g.birth = Eigen::VectorXd::Zero(n_states);
    g.clutter_rate = 0.0;
    g.clutter_density = Eigen::VectorXd::Constant(n_meas, 1.0 / n_meas);
    for (int i = 0; i < n_states; ++i) g.state_labels.push_back(std::to_string(i));
    for (int i = 0; i < n_meas; ++i) g.meas_labels.push_back(std::to_string(i));
    return g;
}

GridModel aligned(const GridModel& model) {
    GridModel g = model;
    g.markov = Eigen::MatrixXd::Identity(model.num_states(), model.num_states());
    g.p_s = Eigen::VectorXd::Ones(model.num_states());
    g.birth = Eigen::VectorXd::Zero(model.num_states());
    return g;
}

double clutter_set_density(const GridModel& model, PointSet Z) {
    double v = std::exp(-model.clutter_rate);
    Z.for_each([&](int z) { v *= model.kappa(z); });
    return v;
}

double multiset_weight(std::span<const int> Z) {
    std::map<int, int> counts;
    for (int z : Z) ++counts[z];
    double w = 1.0;
    for (const auto& [z, c] : counts) {
        for (int i = 2; i <= c; ++i) w /= i;
    }
    return w;
}

GridModel random_grid_model(int n_states, int n_meas, unsigned seed, double clutter_rate) {
    boost::random::mt19937 rng(seed);
    boost::random::uniform_real_distribution<double> u(0.05, 1.0);
    GridModel g = make_grid_model(n_states, n_meas);
    for (int r = 0; r < n_states; ++r) {
        for (int c = 0; c < n_states; ++c) g.markov(r, c) = u(rng);
        g.markov.row(r) /= g.markov.row(r).sum();
    }
    for (int c = 0; c < n_states; ++c) {
        for (int z = 0; z < n_meas; ++z) g.likelihood(z, c) = u(rng);
        g.likelihood.col(c) /= g.likelihood.col(c).sum();
    }
    for (int x = 0; x < n_states; ++x) {
        g.p_d[x] = 0.1 + 0.8 * u(rng);
        g.p_s[x] = 0.5 + 0.5 * u(rng);
        g.birth[x] = 0.2 * u(rng);
    }
    for (int z = 0; z < n_meas; ++z) g.clutter_density[z] = u(rng);
    g.clutter_density /= g.clutter_density.sum();
    g.clutter_rate = clutter_rate;
    return g;
}

}  // namespace udrfs
