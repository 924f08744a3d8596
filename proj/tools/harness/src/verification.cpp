#include "udrfs/harness/verification.hpp"

#include "udrfs/harness/pipeline.hpp"

#include "udrfs/bayes_filter.hpp"
#include "udrfs/brute_force.hpp"
#include "udrfs/oracle.hpp"
#include "udrfs/phd.hpp"
#include "udrfs/tagged.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace udrfs::harness {

namespace {

using Rng = boost::random::mt19937;

double uniform(Rng& rng, double lo, double hi) { return boost::random::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return boost::random::uniform_int_distribution<int>(lo, hi)(rng); }

/// |a - b| relative to the larger magnitude; 0 when both vanish.
double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return scale == 0.0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

double pointwise_rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double err = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) err = std::max(err, rel_diff(a[i], b[i]));
    return err;
}

/// Componentwise relative difference of two mixtures with the same layout.
double componentwise_rel(const GaussianMixture& a, const GaussianMixture& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ca = a.components[i];
        const auto& cb = b.components[i];
        err = std::max({err, rel_diff(ca.weight, cb.weight), rel_diff(ca.mean, cb.mean), rel_diff(ca.cov, cb.cov)});
    }
    return err;
}

/// Mixtures compared as functions: total mass plus values at the given points.
double functional_rel(const GaussianMixture& a, const GaussianMixture& b, const std::vector<Eigen::VectorXd>& points) {
    double err = rel_diff(gm_mass(a), gm_mass(b));
    for (const auto& x : points) err = std::max(err, rel_diff(gm_eval(a, x), gm_eval(b, x)));
    return err;
}

/// Single-target JTF grids: 2-5 states, 2-4 measurement points, plus one model
/// with p_D at both extremes.
std::vector<GridModel> jtf_grids() {
    std::vector<GridModel> out;
    for (int n = 2; n <= 5; ++n) {
        for (int m = 2; m <= 4; ++m) out.push_back(random_grid_model(n, m, static_cast<unsigned>(100 * n + m), 0.0));
    }
    GridModel edge = random_grid_model(3, 2, 7U, 0.0);
    edge.p_d[0] = 0.0;
    edge.p_d[1] = 1.0;
    out.push_back(edge);
    return out;
}

/// Random density over the admissible sets of `space` that satisfy keep(X).
template <typename Keep>
FiniteSetDensity random_density(const FiniteSpace& space, Rng& rng, Keep keep) {
    FiniteSetDensity f(space);
    space.for_each_subset([&](PointSet X) {
        if (keep(X)) f.set(X, uniform(rng, 0.1, 1.0));
    });
    return f.normalized();
}

FiniteSetDensity random_density(const FiniteSpace& space, Rng& rng) {
    return random_density(space, rng, [](PointSet) { return true; });
}

std::vector<double> random_values(int n, Rng& rng, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = uniform(rng, lo, hi);
    return v;
}

Eigen::VectorXd random_vector(int n, Rng& rng, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(rng, lo, hi);
    return v;
}

/// Test functions used on a space of n points: every indicator and two random functions.
std::vector<std::vector<double>> test_functions(int n, Rng& rng) {
    std::vector<std::vector<double>> out;
    for_each_subset(PointSet::full(n), [&](PointSet S) {
        const TestFunction h = TestFunction::indicator(n, S);
        out.emplace_back(h.values().begin(), h.values().end());
    });
    out.push_back(random_values(n, rng, 0.0, 1.0));
    out.push_back(random_values(n, rng, 0.0, 1.0));
    return out;
}

// Single-target JTF checks.

double nud_normalization(const SingleTargetJtf& jtf) {
    double err = 0.0;
    for (const GridModel& g : jtf_grids()) {
        const int n = g.num_states();
        for (int xp = 0; xp < n; ++xp) {
            for (int op = 0; op < 2; ++op) {
                double total = 0.0;
                for_each_subset(PointSet::full(g.num_meas()), [&](PointSet Z) {
                    for (int x = 0; x < n; ++x) {
                        for (int o = 0; o < 2; ++o) total += jtf(Z, x, o, xp, op, g);
                    }
                });
                err = std::max(err, std::abs(total - 1.0));
            }
        }
    }
    return err;
}

double nud_marginalization(const SingleTargetJtf& jtf) {
    double err = 0.0;
    for (const GridModel& g : jtf_grids()) {
        const int n = g.num_states();
        for_each_subset(PointSet::full(g.num_meas()), [&](PointSet Z) {
            for (int x = 0; x < n; ++x) {
                for (int xp = 0; xp < n; ++xp) {
                    for (int op = 0; op < 2; ++op) {
                        const double tag_sum = jtf(Z, x, 0, xp, op, g) + jtf(Z, x, 1, xp, op, g);
                        err = std::max(err, std::abs(tag_sum - cjtf(Z, x, xp, g)));
                    }
                }
            }
        });
    }
    return err;
}

double nud_compact_form(const SingleTargetJtf& jtf) {
    double err = 0.0;
    for (const GridModel& g : jtf_grids()) {
        const int n = g.num_states();
        std::vector<PointSet> scans{PointSet{}};
        for (int z = 0; z < g.num_meas(); ++z) scans.push_back(PointSet::of({z}));
        for (PointSet Z : scans) {
            for (int x = 0; x < n; ++x) {
                for (int o = 0; o < 2; ++o) {
                    for (int xp = 0; xp < n; ++xp) {
                        for (int op = 0; op < 2; ++op) {
                            err = std::max(err, std::abs(jtf(Z, x, o, xp, op, g) - nud_jtf_five_case(Z, x, o, xp, op, g)));
                        }
                    }
                }
            }
        }
    }
    return err;
}

/// Every 3-scan sequence over {empty, {0}, {1}} on 3-point grids.
template <typename F>
void for_each_grid_trajectory(F&& f) {
    const std::vector<PointSet> options{PointSet{}, PointSet::of({0}), PointSet::of({1})};
    for (unsigned seed : {11U, 12U, 13U}) {
        const GridModel g = random_grid_model(3, 2, seed, 0.0);
        Rng rng(seed);
        std::vector<double> prior = random_values(6, rng, 0.05, 1.0);
        double s = 0.0;
        for (double v : prior) s += v;
        for (double& v : prior) v /= s;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                for (int c = 0; c < 3; ++c) f(g, prior, std::vector<PointSet>{options[static_cast<std::size_t>(a)],
                                                                              options[static_cast<std::size_t>(b)],
                                                                              options[static_cast<std::size_t>(c)]});
            }
        }
    }
}

double dud_grid_vs_trajectories(const SingleTargetJtf& jtf) {
    double err = 0.0;
    for_each_grid_trajectory([&](const GridModel& g, const std::vector<double>& prior, const std::vector<PointSet>& scans) {
        TaggedGridDensity f(prior);
        for (PointSet Z : scans) f = dud_single_step(f, Z, g, jtf).posterior;
        const std::vector<double> oracle = dud_trajectory_oracle(prior, scans, g);
        for (std::size_t i = 0; i < oracle.size(); ++i) err = std::max(err, std::abs(f.values()[i] - oracle[i]));
    });
    return err;
}

double dud_single_step_marginal(const SingleTargetJtf& jtf) {
    double err = 0.0;
    for_each_grid_trajectory([&](const GridModel& g, const std::vector<double>& prior, const std::vector<PointSet>& scans) {
        TaggedGridDensity f(prior);
        Eigen::VectorXd u(3);
        for (int x = 0; x < 3; ++x) u[x] = f.at(x, 0) + f.at(x, 1);
        for (PointSet Z : scans) {
            f = dud_single_step(f, Z, g, jtf).posterior;
            u = single_step(u, Z, g).posterior;
            for (int x = 0; x < 3; ++x) err = std::max(err, std::abs(f.at(x, 0) + f.at(x, 1) - u[x]));
        }
    });
    return err;
}

// Finite-set oracle checks.

double fstar_subset_sum() {
    double err = 0.0;
    for (unsigned seed : {21U, 22U}) {
        const GridModel g = random_grid_model(3, 3, seed, 1.3);
        for_each_subset(PointSet::full(3), [&](PointSet Z) {
            for_each_subset(PointSet::full(3), [&](PointSet X) {
                const std::vector<int> targets = X.elements();
                double subset_sum = 0.0;
                for_each_subset(Z, [&](PointSet W) {
                    if (W.size() == X.size()) subset_sum += fstar_hat(W, targets, Z, g);
                });
                err = std::max(err, std::abs(fstar(Z, targets, g) - subset_sum));
            });
        });
    }
    return err;
}

double meas_density_truncation_mass() {
    double err = 0.0;
    for (unsigned seed : {23U, 24U}) {
        const GridModel g = random_grid_model(3, 3, seed, 0.9);
        for_each_subset(PointSet::full(3), [&](PointSet X) {
            double total = 0.0;
            for_each_subset(PointSet::full(3), [&](PointSet Z) { total += standard_meas_density(X, Z, g); });
            err = std::max(err, std::abs(total - poisson_truncation_mass(X.elements(), g)));
        });
    }
    return err;
}

/// S-U/D setups: untagged priors on 2 and 3 base points with cap 2, every scan
/// on a 2-point measurement grid, plus the Bernoulli example model.
template <typename F>
void for_each_sud_setup(F&& f) {
    for (int nb : {2, 3}) {
        for (unsigned seed : {31U, 32U}) {
            const GridModel g = random_grid_model(nb, 2, seed + static_cast<unsigned>(nb), 0.8);
            Rng rng(seed);
            const FiniteSetDensity prior = random_density(FiniteSpace(nb, 2), rng);
            for_each_subset(PointSet::full(2), [&](PointSet Z) { f(g, prior, Z); });
        }
    }
}

enum class SudPart { total, detected, undetected };

double sud_check(SudPart part) {
    double err = 0.0;
    for_each_sud_setup([&](const GridModel& g, const FiniteSetDensity& prior, PointSet Z) {
        const PosteriorTriple post = sud_posteriors(prior, Z, g);
        const int nb = g.num_states();
        switch (part) {
            case SudPart::total:
                err = std::max(err, max_abs_difference(post.total, bayes_posterior(prior, Z, g)));
                break;
            case SudPart::detected: {
                const FiniteSetDensity joint = detection_joint_oracle(prior, Z, g);
                err = std::max(err, max_abs_difference(post.detected, region_to_base(censor(joint, detected_region(nb)), 1)));
                break;
            }
            case SudPart::undetected: {
                const FiniteSetDensity joint = detection_joint_oracle(prior, Z, g);
                err = std::max(err,
                               max_abs_difference(post.undetected, region_to_base(censor(joint, undetected_region(nb)), 0)));
                break;
            }
        }
    });
    return err;
}

double dud_check(SudPart part) {
    double err = 0.0;
    for (int nb : {2, 3}) {
        for (unsigned seed : {41U, 42U}) {
            const GridModel g = random_grid_model(nb, 2, seed + static_cast<unsigned>(nb), 0.7);
            Rng rng(seed);
            const FiniteSetDensity prior = random_density(FiniteSpace(2 * nb, 2), rng, base_distinct);
            for_each_subset(PointSet::full(2), [&](PointSet Z) {
                const PosteriorTriple post = dud_posteriors(prior, Z, g);
                const FiniteSetDensity oracle = dud_bayes_oracle(prior, Z, g);
                switch (part) {
                    case SudPart::total:
                        err = std::max(err, max_abs_difference(post.total, oracle));
                        break;
                    case SudPart::detected:
                        err = std::max(err, max_abs_difference(post.detected, censor(oracle, detected_region(nb))));
                        break;
                    case SudPart::undetected:
                        err = std::max(err, max_abs_difference(post.undetected, censor(oracle, undetected_region(nb))));
                        break;
                }
            });
        }
    }
    return err;
}

double censor_idempotence() {
    double err = 0.0;
    Rng rng(51U);
    for (int n : {3, 4}) {
        const FiniteSetDensity f = random_density(FiniteSpace(n, 3), rng);
        for_each_subset(PointSet::full(n), [&](PointSet O) {
            const FiniteSetDensity once = censor(f, O);
            err = std::max(err, max_abs_difference(censor(once, O), once));
            err = std::max(err, std::abs(set_integral(once) - 1.0));
        });
    }
    return err;
}

// Multitarget NUD-JTF checks.

template <typename F>
void for_each_aligned_pair(F&& f) {
    for (int nb : {2, 3}) {
        const GridModel g = aligned(random_grid_model(nb, 2, 60U + static_cast<unsigned>(nb), 0.4));
        const FiniteSpace tagged(2 * nb, 2);
        tagged.for_each_subset([&](PointSet X_prev) {
            if (!base_distinct(X_prev)) return;
            const int max_z = measurement_truncation(g.clutter_rate, X_prev.size());
            const MultitargetLimits limits{4, max_z};
            f(g, tagged, X_prev, limits);
        });
    }
}

double multitarget_normalization() {
    double err = 0.0;
    for_each_aligned_pair([&](const GridModel& g, const FiniteSpace& tagged, PointSet X_prev, MultitargetLimits limits) {
        double total = 0.0;
        for_each_multiset(g.num_meas(), limits.max_measurements, [&](const MeasurementMultiset& Z) {
            const double w = multiset_weight(Z);
            tagged.for_each_subset([&](PointSet X) {
                if (X.size() == X_prev.size()) total += w * nud_jtf_multitarget(Z, X, X_prev, g, limits);
            });
        });
        err = std::max(err, std::abs(total - 1.0));
    });
    return err;
}

double multitarget_pgfl() {
    double err = 0.0;
    Rng rng(61U);
    for_each_aligned_pair([&](const GridModel& g, const FiniteSpace& tagged, PointSet X_prev, MultitargetLimits limits) {
        const int m = g.num_meas();
        std::vector<std::vector<double>> gs{std::vector<double>(static_cast<std::size_t>(m), 0.0),
                                            std::vector<double>(static_cast<std::size_t>(m), 1.0),
                                            random_values(m, rng, 0.0, 1.0), random_values(m, rng, 0.0, 1.0)};
        tagged.for_each_subset([&](PointSet X) {
            if (X.size() != X_prev.size()) return;
            for (const auto& gz : gs) {
                double integral = 0.0;
                for_each_multiset(m, limits.max_measurements, [&](const MeasurementMultiset& Z) {
                    double power = multiset_weight(Z);
                    for (int z : Z) power *= gz[static_cast<std::size_t>(z)];
                    if (power != 0.0) integral += power * nud_jtf_multitarget(Z, X, X_prev, g, limits);
                });
                err = std::max(err, std::abs(integral - nud_partial_pgfl(gz, X, X_prev, g, limits)));
            }
        });
    });
    return err;
}

// Parallelism checks.

double parallel_poisson() {
    double err = 0.0;
    for (unsigned seed : {71U, 72U}) {
        const GridModel g = random_grid_model(3, 2, seed, 0.7);
        Rng rng(seed);
        const std::vector<double> D = random_values(3, rng, 0.1, 0.8);
        const auto hs = test_functions(3, rng);
        for_each_subset(PointSet::full(2), [&](PointSet Z) {
            // U-posterior p.g.fl. with the Poisson derivative dG/dX[g] = D^X e^{D[g - 1]}.
            auto undetected = [&](const std::vector<double>& h) {
                double exponent = 0.0;
                for (int x = 0; x < 3; ++x) exponent += D[static_cast<std::size_t>(x)] * (h[static_cast<std::size_t>(x)] * g.missed(x) - 1.0);
                double total = 0.0;
                for_each_subset(PointSet::full(3), [&](PointSet X) {
                    if (X.size() > Z.size()) return;
                    double w = fstar(Z, X.elements(), g);
                    X.for_each([&](int x) { w *= g.p_d_at(x) * D[static_cast<std::size_t>(x)]; });
                    total += w;
                });
                return total * std::exp(exponent);
            };
            const double norm = undetected(std::vector<double>(3, 1.0));
            for (const auto& h : hs) {
                double expected = 0.0;
                for (int x = 0; x < 3; ++x) expected += D[static_cast<std::size_t>(x)] * g.missed(x) * (h[static_cast<std::size_t>(x)] - 1.0);
                err = std::max(err, std::abs(undetected(h) / norm - std::exp(expected)));
            }
        });
    }
    return err;
}

struct BernoulliSetup {
    GridModel model;
    double q = 0.0;
    std::vector<double> spatial;
};

std::vector<BernoulliSetup> bernoulli_setups() {
    std::vector<BernoulliSetup> out;
    GridModel ex = make_grid_model(2, 2);
    ex.p_d.setConstant(0.5);
    ex.likelihood << 0.8, 0.3, 0.2, 0.7;
    ex.clutter_rate = 1.0;
    ex.clutter_density.setConstant(0.5);
    out.push_back({ex, 0.6, {0.5, 0.5}});
    for (unsigned seed : {81U, 82U}) {
        Rng rng(seed);
        std::vector<double> s = random_values(3, rng, 0.1, 1.0);
        const double total = s[0] + s[1] + s[2];
        for (double& v : s) v /= total;
        out.push_back({random_grid_model(3, 2, seed, 0.9), uniform(rng, 0.2, 0.9), s});
    }
    return out;
}

double parallel_bernoulli(bool undetected_part) {
    double err = 0.0;
    for (const auto& setup : bernoulli_setups()) {
        const GridModel& g = setup.model;
        const int n = g.num_states();
        FiniteSetDensity prior(FiniteSpace(n, 1));
        prior.set(PointSet{}, 1.0 - setup.q);
        for (int x = 0; x < n; ++x) prior.set(PointSet::of({x}), setup.q * setup.spatial[static_cast<std::size_t>(x)]);
        for_each_subset(PointSet::full(g.num_meas()), [&](PointSet Z) {
            const SudPgfl G(prior, Z, g);
            const Eigen::VectorXd lhat = bernoulli_lhat(Z, g);
            // Closed-form Bernoulli p.g.fl. 1 - q + q s[a(h)].
            auto closed = [&](const std::vector<double>& h) {
                double integral = 0.0;
                for (int x = 0; x < n; ++x) {
                    const double hx = h[static_cast<std::size_t>(x)];
                    const double a = undetected_part ? lhat[x] + g.missed(x) * (hx - 1.0) : lhat[x] * hx;
                    integral += setup.spatial[static_cast<std::size_t>(x)] * a;
                }
                return 1.0 - setup.q + setup.q * integral;
            };
            auto formula = [&](const std::vector<double>& h) { return undetected_part ? G.undetected(h) : G.total(h); };
            const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
            const double norm_formula = formula(ones);
            const double norm_closed = closed(ones);
            for_each_subset(PointSet::full(n), [&](PointSet S) {
                std::vector<double> h(static_cast<std::size_t>(n), 0.0);
                S.for_each([&](int x) { h[static_cast<std::size_t>(x)] = 1.0; });
                err = std::max(err, std::abs(formula(h) / norm_formula - closed(h) / norm_closed));
            });
        });
    }
    return err;
}

// PHD checks.

ScenarioModel random_scenario_model(Rng& rng) {
    ScenarioModel m;
    m.state_dim = 4;
    m.meas_dim = 2;
    m.motion.F = Eigen::MatrixXd::Identity(4, 4);
    m.motion.F(0, 2) = m.motion.F(1, 3) = uniform(rng, 0.5, 1.5);
    const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(4, 4, [&]() { return uniform(rng, -0.5, 0.5); });
    m.motion.Q = A * A.transpose() + 0.1 * Eigen::MatrixXd::Identity(4, 4);
    m.motion.p_s = uniform(rng, 0.5, 1.0);
    m.measurement.H = Eigen::MatrixXd::Zero(2, 4);
    m.measurement.H(0, 0) = m.measurement.H(1, 1) = 1.0;
    const Eigen::MatrixXd B = Eigen::MatrixXd::NullaryExpr(2, 2, [&]() { return uniform(rng, -1.0, 1.0); });
    m.measurement.R = B * B.transpose() + Eigen::MatrixXd::Identity(2, 2);
    m.measurement.p_d = uniform(rng, 0.3, 0.99);
    m.clutter.rate = uniform(rng, 0.0, 5.0);
    m.clutter.lower = Eigen::Vector2d(-50.0, -50.0);
    m.clutter.upper = Eigen::Vector2d(50.0, 50.0);
    const int births = uniform_int(rng, 1, 2);
    for (int i = 0; i < births; ++i) {
        m.birth.add({uniform(rng, 0.01, 0.2), random_vector(4, rng, -30.0, 30.0), 4.0 * Eigen::MatrixXd::Identity(4, 4)});
    }
    return m;
}

GaussianMixture random_mixture(Rng& rng, int max_components) {
    GaussianMixture gm;
    const int count = uniform_int(rng, 1, max_components);
    for (int i = 0; i < count; ++i) {
        const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(4, 4, [&]() { return uniform(rng, -2.0, 2.0); });
        gm.add({uniform(rng, 0.1, 1.5), random_vector(4, rng, -30.0, 30.0), A * A.transpose() + Eigen::MatrixXd::Identity(4, 4)});
    }
    return gm;
}

MeasurementList random_scan(Rng& rng, int max_size) {
    MeasurementList Z;
    const int count = uniform_int(rng, 0, max_size);
    for (int i = 0; i < count; ++i) Z.push_back(random_vector(2, rng, -40.0, 40.0));
    return Z;
}

std::vector<Eigen::VectorXd> probe_points(const GaussianMixture& a, Rng& rng) {
    std::vector<Eigen::VectorXd> points;
    for (const auto& c : a.components) points.push_back(c.mean);
    for (int i = 0; i < 10; ++i) points.push_back(random_vector(4, rng, -40.0, 40.0));
    return points;
}

double phd_composition_gm() {
    double err = 0.0;
    Rng rng(91U);
    for (int trial = 0; trial < 50; ++trial) {
        const ScenarioModel m = random_scenario_model(rng);
        const GaussianMixture prior = random_mixture(rng, 4);
        const MeasurementList Z = random_scan(rng, 3);
        err = std::max(err, componentwise_rel(phd_single_step(prior, Z, m), phd_update(phd_predict(prior, m), Z, m)));
    }
    return err;
}

/// Grid PHD setups: random models with births and survival on 3-4 states, every scan.
template <typename F>
void for_each_grid_phd_setup(F&& f) {
    for (unsigned seed : {101U, 102U, 103U}) {
        const int n = 3 + static_cast<int>(seed % 2);
        const GridModel g = random_grid_model(n, 3, seed, 1.1);
        Rng rng(seed);
        const Eigen::VectorXd d = random_vector(n, rng, 0.0, 0.8);
        const Eigen::VectorXd u = random_vector(n, rng, 0.0, 0.8);
        for_each_subset(PointSet::full(3), [&](PointSet Z) { f(g, d, u, Z); });
    }
}

double phd_composition_grid() {
    double err = 0.0;
    for_each_grid_phd_setup([&](const GridModel& g, const Eigen::VectorXd& d, const Eigen::VectorXd&, PointSet Z) {
        err = std::max(err, pointwise_rel(phd_single_step(d, Z, g), phd_update(phd_predict(d, g), Z, g)));
    });
    return err;
}

double sud_split_grid() {
    double err = 0.0;
    for_each_grid_phd_setup([&](const GridModel& g, const Eigen::VectorXd& d, const Eigen::VectorXd&, PointSet Z) {
        const GridSplit split = sud_phd_step(d, Z, g);
        const Eigen::VectorXd single = phd_single_step(d, Z, g);
        err = std::max({err, pointwise_rel(split.detected + split.undetected, single), pointwise_rel(split.total, single)});
    });
    return err;
}

double sud_split_gm() {
    double err = 0.0;
    Rng rng(111U);
    for (int trial = 0; trial < 20; ++trial) {
        const ScenarioModel m = random_scenario_model(rng);
        const GaussianMixture prior = random_mixture(rng, 4);
        const MeasurementList Z = random_scan(rng, 3);
        const MixtureSplit split = sud_phd_step(prior, Z, m);
        GaussianMixture joined = split.undetected;
        joined.append(split.detected);
        const GaussianMixture single = phd_single_step(prior, Z, m);
        err = std::max({err, componentwise_rel(joined, single), componentwise_rel(split.total, single)});
    }
    return err;
}

double dud_merge_grid() {
    double err = 0.0;
    for_each_grid_phd_setup([&](const GridModel& g, const Eigen::VectorXd& d, const Eigen::VectorXd& u, PointSet Z) {
        const GridUD next = dud_phd_step(GridUD{d, u}, Z, g);
        err = std::max(err, pointwise_rel(next.d_part + next.u_part, phd_single_step(d + u, Z, g)));
    });
    return err;
}

double dud_merge_gm() {
    double err = 0.0;
    Rng rng(121U);
    for (int trial = 0; trial < 20; ++trial) {
        const ScenarioModel m = random_scenario_model(rng);
        const UDMixture prior{random_mixture(rng, 3), random_mixture(rng, 3)};
        const MeasurementList Z = random_scan(rng, 3);
        const UDMixture next = dud_phd_step(prior, Z, m);
        GaussianMixture merged_prior = prior.d_part;
        merged_prior.append(prior.u_part);
        GaussianMixture tag_sum = next.d_part;
        tag_sum.append(next.u_part);
        const GaussianMixture single = phd_single_step(merged_prior, Z, m);
        err = std::max(err, functional_rel(tag_sum, single, probe_points(single, rng)));
    }
    return err;
}

double dud_u_invariance() {
    double err = 0.0;
    for_each_grid_phd_setup([&](const GridModel& g, const Eigen::VectorXd& d, const Eigen::VectorXd& u, PointSet Z) {
        const GridUD with_scan = dud_phd_step(GridUD{d, u}, Z, g);
        const GridUD without = dud_phd_step(GridUD{d, u}, PointSet{}, g);
        err = std::max(err, (with_scan.u_part - without.u_part).cwiseAbs().maxCoeff());
    });
    Rng rng(131U);
    for (int trial = 0; trial < 10; ++trial) {
        const ScenarioModel m = random_scenario_model(rng);
        const UDMixture prior{random_mixture(rng, 3), random_mixture(rng, 3)};
        const UDMixture base = dud_phd_step(prior, MeasurementList{}, m);
        for (int rep = 0; rep < 3; ++rep) {
            err = std::max(err, componentwise_rel(dud_phd_step(prior, random_scan(rng, 4), m).u_part, base.u_part));
        }
    }
    return err;
}

double phd_predict_first_moment() {
    double err = 0.0;
    for (unsigned seed : {141U, 142U}) {
        const GridModel g = random_grid_model(3, 2, seed, 0.0);
        Rng rng(seed);
        const FiniteSetDensity prior = random_density(FiniteSpace(3, 2), rng);
        const std::vector<double> moments = prior.first_moments();
        const Eigen::VectorXd predicted = phd_predict(Eigen::Map<const Eigen::VectorXd>(moments.data(), 3), g);
        const std::vector<double> oracle = predicted_first_moment_oracle(prior, g);
        for (int x = 0; x < 3; ++x) err = std::max(err, std::abs(predicted[x] - oracle[static_cast<std::size_t>(x)]));
    }
    return err;
}

// Bernoulli filter checks.

const std::vector<std::vector<PointSet>>& bernoulli_scan_sequences() {
    static const std::vector<std::vector<PointSet>> seqs{
        {PointSet::of({0}), PointSet{}, PointSet::of({1, 2}), PointSet::of({2}), PointSet::of({0, 1, 2})},
        {PointSet{}, PointSet{}, PointSet::of({1}), PointSet::of({0, 2}), PointSet{}},
        {PointSet::of({2}), PointSet::of({2}), PointSet::of({2}), PointSet::of({0}), PointSet::of({1})}};
    return seqs;
}

double bernoulli_vs_oracle() {
    double err = 0.0;
    for (unsigned seed : {151U, 152U, 153U}) {
        GridModel g = random_grid_model(4, 3, seed, 0.6);
        g.p_s.setOnes();
        g.birth.setZero();
        Rng rng(seed);
        Eigen::VectorXd start = random_vector(4, rng, 0.1, 1.0);
        start *= 0.7 / start.sum();
        for (const auto& scans : bernoulli_scan_sequences()) {
            Eigen::VectorXd D = start;
            FiniteSetDensity f(FiniteSpace(4, 1));
            f.set(PointSet{}, 1.0 - start.sum());
            for (int x = 0; x < 4; ++x) f.set(PointSet::of({x}), start[x]);
            for (PointSet Z : scans) {
                D = bernoulli_single_step(D, Z, g);
                f = bayes_posterior(predict_single_target_oracle(f, g), Z, g);
                err = std::max(err, std::abs((1.0 - D.sum()) - f(PointSet{})));
                for (int x = 0; x < 4; ++x) err = std::max(err, std::abs(D[x] - f(PointSet::of({x}))));
            }
        }
    }
    return err;
}

double dud_bernoulli_tag_sum() {
    double err = 0.0;
    for (unsigned seed : {161U, 162U}) {
        GridModel g = random_grid_model(4, 3, seed, 0.6);
        g.birth *= 0.2;
        Rng rng(seed);
        GridUD tagged{random_vector(4, rng, 0.1, 1.0), random_vector(4, rng, 0.1, 1.0)};
        const double scale = 0.7 / (tagged.d_part.sum() + tagged.u_part.sum());
        tagged.d_part *= scale;
        tagged.u_part *= scale;
        for (const auto& scans : bernoulli_scan_sequences()) {
            GridUD t = tagged;
            Eigen::VectorXd D = t.d_part + t.u_part;
            for (PointSet Z : scans) {
                t = dud_bernoulli_single_step(t, Z, g);
                D = bernoulli_single_step(D, Z, g);
                err = std::max(err, (t.d_part + t.u_part - D).cwiseAbs().maxCoeff());
            }
        }
    }
    return err;
}

double dud_bernoulli_tag_sum_gm() {
    double err = 0.0;
    Rng rng(171U);
    for (int trial = 0; trial < 10; ++trial) {
        ScenarioModel m = random_scenario_model(rng);
        m.clutter.lower = Eigen::Vector2d(-100.0, -100.0);
        m.clutter.upper = Eigen::Vector2d(100.0, 100.0);
        m.clutter.rate = uniform(rng, 0.5, 5.0);
        m.birth.components.resize(1);
        UDMixture tagged{random_mixture(rng, 2), random_mixture(rng, 2)};
        const double scale = 0.8 / (gm_mass(tagged.d_part) + gm_mass(tagged.u_part));
        tagged.d_part.scale(scale);
        tagged.u_part.scale(scale);
        GaussianMixture D = tagged.d_part;
        D.append(tagged.u_part);
        for (int step = 0; step < 5; ++step) {
            const MeasurementList Z = random_scan(rng, 3);
            tagged = dud_bernoulli_single_step(tagged, Z, m);
            D = bernoulli_single_step(D, Z, m);
            GaussianMixture tag_sum = tagged.d_part;
            tag_sum.append(tagged.u_part);
            err = std::max(err, functional_rel(tag_sum, D, probe_points(D, rng)));
        }
    }
    return err;
}

// Estimator on the reference scenario.

double estimator_tag_tracking() {
    const Scenario scenario = reference_scenario();
    const Simulation sim = simulate_scenario(scenario);
    const RunResult first = run_gm_filter(scenario, "dud", sim);
    const RunResult second = run_gm_filter(scenario, "dud", simulate_scenario(scenario));
    if (tracks_csv(first) != tracks_csv(second)) return std::numeric_limits<double>::infinity();
    double err = 0.0;
    for (const auto& row : first.rows) err = std::max(err, static_cast<double>(std::abs(row.detected_count() - row.true_detected)));
    return err;
}

constexpr double kExact = std::numeric_limits<double>::min();

}  // namespace

std::vector<VerificationCase> verification_registry(const RegistryOptions& options) {
    const SingleTargetJtf jtf = options.jtf;
    return {
        {"nud-normalization", "eq-Norm", 1e-10, "2-5 states, 2-4 measurement points, every Z",
         [jtf] { return nud_normalization(jtf); }},
        {"nud-marginalization", "eq-Comp", 1e-12, "2-5 states, 2-4 measurement points, every Z",
         [jtf] { return nud_marginalization(jtf); }},
        {"nud-compact-form", "eq-BFUD-9", kExact, "2-5 states, Z empty or singleton",
         [jtf] { return nud_compact_form(jtf); }},
        {"dud-grid-vs-trajectories", "eq-BF-4", 1e-12, "3 states, 3 scans, 27 scan sequences",
         [jtf] { return dud_grid_vs_trajectories(jtf); }},
        {"dud-single-step-marginal", "eq-BF-3", 1e-12, "3 states, 3 scans, 27 scan sequences",
         [jtf] { return dud_single_step_marginal(jtf); }},
        {"fstar-subset-sum", "eq-fStar", 1e-12, "|Z| <= 3, |X| <= 3", fstar_subset_sum},
        {"meas-density-truncation-mass", "eq-MTA-2", 1e-12, "3 states, 3 measurement points",
         meas_density_truncation_mass},
        {"sud-total-vs-bayes", "eq-Orig-1", 1e-12, "2-3 base points, cap 2", [] { return sud_check(SudPart::total); }},
        {"sud-detected", "eq-Sensors-D", 1e-12, "2-3 base points, cap 2", [] { return sud_check(SudPart::detected); }},
        {"sud-undetected", "eq-Udistr", 1e-12, "2-3 base points, cap 2", [] { return sud_check(SudPart::undetected); }},
        {"dud-total-vs-bayes", "eq-Main-UD", 1e-12, "2-3 base points (4-6 tagged), cap 2",
         [] { return dud_check(SudPart::total); }},
        {"dud-censor-detected", "eq-Main-D", 1e-12, "2-3 base points (4-6 tagged), cap 2",
         [] { return dud_check(SudPart::detected); }},
        {"dud-censor-undetected", "eq-Main-U", 1e-12, "2-3 base points (4-6 tagged), cap 2",
         [] { return dud_check(SudPart::undetected); }},
        {"censor-idempotence", "eq-Censor-PGFL", 1e-12, "3-4 points, cap 3", censor_idempotence},
        {"nud-multitarget-normalization", "eq-NUD2", 1e-10, "|X| <= 2, 2 measurement points",
         multitarget_normalization},
        {"nud-multitarget-pgfl", "eq-NUD1", 1e-10, "|X| <= 2, 2 measurement points", multitarget_pgfl},
        {"parallel-poisson", "eq-Parallel-1", 1e-12, "3 base points, 2 measurement points", parallel_poisson},
        {"parallel-bernoulli-total", "eq-Parallel-2", 1e-12, "2-3 base points, indicator basis",
         [] { return parallel_bernoulli(false); }},
        {"parallel-bernoulli-undetected", "eq-Parallel-3", 1e-12, "2-3 base points, indicator basis",
         [] { return parallel_bernoulli(true); }},
        {"phd-composition", "eq-PHD-SingleStep", 1e-12, "50 random 4-D mixtures", phd_composition_gm},
        {"phd-composition-grid", "eq-PHD-SingleStep", 1e-12, "3-4 states, 3 measurement points",
         phd_composition_grid},
        {"phd-predict-first-moment", "eq-PHD-P", 1e-10, "3 states, cap 2", phd_predict_first_moment},
        {"sud-phd-split-grid", "eq-PHD-SUD3", 1e-12, "3-4 states, 3 measurement points", sud_split_grid},
        {"sud-phd-split-gm", "eq-PHD-SUD3", 1e-12, "20 random 4-D mixtures", sud_split_gm},
        {"dud-phd-merge-grid", "eq-PHD-DUD3", 1e-12, "3-4 states, 3 measurement points", dud_merge_grid},
        {"dud-phd-merge-gm", "eq-PHD-DUD4", 1e-12, "20 random 4-D tagged mixtures", dud_merge_gm},
        {"dud-phd-u-invariance", "eq-PHD-DUD2", 1e-12, "grid and 4-D mixtures", dud_u_invariance},
        {"bernoulli-vs-oracle", "eq-PHD-single", 1e-10, "4 states, cap 1, 5 scans", bernoulli_vs_oracle},
        {"dud-bernoulli-tag-sum", "eq-PHD-UD", 1e-12, "4 states, 5 scans", dud_bernoulli_tag_sum},
        {"dud-bernoulli-tag-sum-gm", "eq-PHD-UD", 1e-12, "random 4-D mixtures, 5 scans", dud_bernoulli_tag_sum_gm},
        {"dud-estimator-tag-tracking", "eq-PHD-E", 1.0, "reference scenario, 40 steps", estimator_tag_tracking},
    };
}

unsigned thread_cap() {
    if (const char* env = std::getenv("UDRFS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<CaseOutcome> run_cases(const std::vector<VerificationCase>& cases, unsigned max_threads) {
    std::vector<CaseOutcome> out(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            const VerificationCase& c = cases[i];
            CaseOutcome& o = out[i];
            o.name = c.name;
            o.paper_eq = c.paper_eq;
            o.scale = c.scale;
            o.tolerance = c.tolerance;
            try {
                o.max_abs_error = c.run();
                o.pass = std::isfinite(o.max_abs_error) && o.max_abs_error <= c.tolerance;
            } catch (const std::exception& e) {
                o.max_abs_error = std::numeric_limits<double>::infinity();
                o.pass = false;
                o.failure = e.what();
            }
        }
    };
    const unsigned n = std::max(1U, std::min<unsigned>(max_threads, static_cast<unsigned>(cases.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

nlohmann::ordered_json verification_report(const std::vector<CaseOutcome>& outcomes) {
    nlohmann::ordered_json rep;
    rep["cases"] = nlohmann::ordered_json::array();
    int passed = 0;
    for (const auto& o : outcomes) {
        nlohmann::ordered_json c;
        c["name"] = o.name;
        c["paper_eq"] = o.paper_eq;
        c["max_abs_error"] = std::isfinite(o.max_abs_error) ? nlohmann::ordered_json(o.max_abs_error)
                                                            : nlohmann::ordered_json("inf");
        c["tolerance"] = o.tolerance;
        c["scale"] = o.scale;
        c["pass"] = o.pass;
        if (!o.failure.empty()) c["failure"] = o.failure;
        rep["cases"].push_back(std::move(c));
        passed += o.pass ? 1 : 0;
    }
    rep["passed"] = passed;
    rep["failed"] = static_cast<int>(outcomes.size()) - passed;
    rep["all_pass"] = passed == static_cast<int>(outcomes.size());
    return rep;
}

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> criteria{
        {1, "NUD-JTF normalization", {"nud-normalization"}},
        {2, "NUD-JTF marginalization to the C-JTF", {"nud-marginalization"}},
        {3, "compact form equals the five-case definition", {"nud-compact-form"}},
        {4, "D-U/D grid filter equals the trajectory oracle", {"dud-grid-vs-trajectories"}},
        {5, "f* subset-sum identity", {"fstar-subset-sum"}},
        {6, "S-U/D posteriors equal the Bayes oracle and its censorings",
         {"sud-total-vs-bayes", "sud-detected", "sud-undetected"}},
        {7, "D-U/D posteriors equal the oracle and its censorings",
         {"dud-total-vs-bayes", "dud-censor-detected", "dud-censor-undetected"}},
        {8, "multitarget NUD-JTF normalization and partial p.g.fl.",
         {"nud-multitarget-normalization", "nud-multitarget-pgfl"}},
        {9, "parallelism identities", {"parallel-poisson", "parallel-bernoulli-total", "parallel-bernoulli-undetected"}},
        {10, "PHD single-step composition identity", {"phd-composition", "phd-composition-grid"}},
        {11, "S-U/D PHD split identity", {"sud-phd-split-grid", "sud-phd-split-gm"}},
        {12, "D-U/D PHD merge identity and U-part scan invariance",
         {"dud-phd-merge-grid", "dud-phd-merge-gm", "dud-phd-u-invariance"}},
        {13, "Bernoulli filter vs capped oracle; tagged tag-sum",
         {"bernoulli-vs-oracle", "dud-bernoulli-tag-sum", "dud-bernoulli-tag-sum-gm"}},
        {14, "estimator determinism and D-tag tracking", {"dud-estimator-tag-tracking"}},
    };
    return criteria;
}

}  // namespace udrfs::harness
