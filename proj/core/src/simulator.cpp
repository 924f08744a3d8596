#include "udrfs/simulator.hpp"

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <stdexcept>

namespace udrfs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, int step, SimProcess process) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(step));
    return splitmix64(h ^ static_cast<std::uint64_t>(process));
}

namespace {

using Rng = boost::random::mt19937_64;

Rng stream(std::uint64_t seed, int step, SimProcess p) { return Rng(substream_seed(seed, step, p)); }

/// Square root of a positive-semidefinite matrix (A = S S^T).
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    const Eigen::VectorXd ev = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * ev.asDiagonal();
}

Eigen::VectorXd standard_normal(Rng& rng, Eigen::Index n) {
    boost::random::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = nd(rng);
    return v;
}

bool bernoulli(Rng& rng, double p) {
    boost::random::uniform_01<double> u;
    return u(rng) < p;
}

}  // namespace

Simulation simulate(const ScenarioModel& model, int steps, std::uint64_t seed, FlagTiming timing,
                    const InitialPopulation& initial) {
    if (steps < 1) throw std::invalid_argument("simulate: steps must be at least 1");
    validate(model);
    const Eigen::MatrixXd q_sqrt = psd_sqrt(model.motion.Q);
    const Eigen::MatrixXd r_chol = Eigen::LLT<Eigen::MatrixXd>(model.measurement.R).matrixL();
    std::vector<Eigen::MatrixXd> birth_chol;
    std::vector<double> birth_weights;
    for (const auto& c : model.birth.components) {
        birth_chol.emplace_back(Eigen::LLT<Eigen::MatrixXd>(c.cov).matrixL());
        birth_weights.push_back(c.weight);
    }
    const double birth_mass = gm_mass(model.birth);

    struct Live {
        int id;
        Eigen::VectorXd x;
        bool detected;
    };
    std::vector<Live> live;
    int next_id = 0;
    Simulation sim;

    if (!initial.intensity.empty()) {
        Rng r0 = stream(seed, 0, SimProcess::birth);
        for (const auto& comp : initial.intensity.components) {
            if (comp.weight < 0.0 || comp.weight > 1.0)
                throw std::invalid_argument("simulate: initial component weights must lie in [0, 1]");
            if (!bernoulli(r0, comp.weight)) continue;
            const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(comp.cov).matrixL();
            live.push_back({next_id++, comp.mean + L * standard_normal(r0, model.state_dim), initial.detected});
        }
    }

    for (int k = 1; k <= steps; ++k) {
        // Survival, then motion of the survivors.
        {
            Rng rs = stream(seed, k, SimProcess::survival);
            std::vector<Live> kept;
            for (auto& t : live) {
                if (bernoulli(rs, model.motion.p_s)) kept.push_back(std::move(t));
            }
            live = std::move(kept);
            Rng rm = stream(seed, k, SimProcess::motion);
            for (auto& t : live) t.x = model.motion.F * t.x + q_sqrt * standard_normal(rm, model.state_dim);
        }
        // Births.
        if (birth_mass > 0.0) {
            Rng rb = stream(seed, k, SimProcess::birth);
            boost::random::poisson_distribution<int, double> count(birth_mass);
            const int nb = count(rb);
            boost::random::discrete_distribution<int, double> pick(birth_weights.begin(), birth_weights.end());
            for (int i = 0; i < nb; ++i) {
                const int c = pick(rb);
                const auto& comp = model.birth.components[static_cast<std::size_t>(c)];
                live.push_back({next_id++, comp.mean + birth_chol[static_cast<std::size_t>(c)] * standard_normal(rb, model.state_dim), false});
            }
        }
        // Detections.
        MeasurementRecord meas;
        meas.k = k;
        std::vector<bool> hit(live.size(), false);
        {
            Rng rd = stream(seed, k, SimProcess::detection);
            Rng rn = stream(seed, k, SimProcess::measurement_noise);
            for (std::size_t i = 0; i < live.size(); ++i) {
                if (!bernoulli(rd, model.measurement.p_d)) continue;
                hit[i] = true;
                meas.Z.push_back(model.measurement.H * live[i].x + r_chol * standard_normal(rn, model.meas_dim));
                meas.origins.push_back(live[i].id);
            }
        }
        // Clutter.
        if (model.clutter.rate > 0.0) {
            Rng rc = stream(seed, k, SimProcess::clutter);
            boost::random::poisson_distribution<int, double> count(model.clutter.rate);
            const int nc = count(rc);
            for (int i = 0; i < nc; ++i) {
                Eigen::VectorXd z(model.meas_dim);
                for (int d = 0; d < model.meas_dim; ++d) {
                    boost::random::uniform_real_distribution<double> u(model.clutter.lower[d], model.clutter.upper[d]);
                    z[d] = u(rc);
                }
                meas.Z.push_back(std::move(z));
                meas.origins.push_back(-1);
            }
        }

        TruthRecord truth;
        truth.k = k;
        for (std::size_t i = 0; i < live.size(); ++i) {
            if (timing == FlagTiming::same_step && hit[i]) live[i].detected = true;
            truth.targets.push_back({live[i].id, live[i].x, live[i].detected});
            if (hit[i]) live[i].detected = true;
        }
        sim.truth.push_back(std::move(truth));
        sim.measurements.push_back(std::move(meas));
    }
    return sim;
}

GridSimulation simulate_grid(const GridModel& model, const TaggedGridDensity& prior, int steps, std::uint64_t seed,
                             FlagTiming timing) {
    if (steps < 1) throw std::invalid_argument("simulate_grid: steps must be at least 1");
    const int n = model.num_states();
    if (prior.num_states() != n) throw std::invalid_argument("simulate_grid: prior size does not match the model");

    GridSimulation sim;
    int x = 0;
    bool detected = false;
    {
        Rng r0 = stream(seed, 0, SimProcess::birth);
        boost::random::discrete_distribution<int, double> pick(prior.values().begin(), prior.values().end());
        const int t = pick(r0);
        x = t / 2;
        detected = t % 2 == 1;
    }
    sim.truth.push_back({0, x, detected});
    for (int k = 1; k <= steps; ++k) {
        Rng rm = stream(seed, k, SimProcess::motion);
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = model.markov(x, j);
        boost::random::discrete_distribution<int, double> move(row.begin(), row.end());
        x = move(rm);

        GridMeasurementRecord meas;
        meas.k = k;
        Rng rd = stream(seed, k, SimProcess::detection);
        const bool hit = bernoulli(rd, model.p_d[x]);
        if (hit) {
            Rng rn = stream(seed, k, SimProcess::measurement_noise);
            std::vector<double> col(static_cast<std::size_t>(model.num_meas()));
            for (int z = 0; z < model.num_meas(); ++z) col[static_cast<std::size_t>(z)] = model.likelihood(z, x);
            boost::random::discrete_distribution<int, double> draw(col.begin(), col.end());
            meas.Z = PointSet::of({draw(rn)});
        }
        if (timing == FlagTiming::same_step && hit) detected = true;
        sim.truth.push_back({k, x, detected});
        if (hit) detected = true;
        sim.measurements.push_back(meas);
    }
    return sim;
}

}  // namespace udrfs
