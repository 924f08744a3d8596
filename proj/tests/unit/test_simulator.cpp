#include "udrfs/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

namespace udrfs {
namespace {

ScenarioModel plane_model(double p_s, double p_d, double clutter_rate) {
    ScenarioModel m;
    m.state_dim = 4;
    m.meas_dim = 2;
    m.motion.F = Eigen::MatrixXd::Identity(4, 4);
    m.motion.F(0, 2) = 1.0;
    m.motion.F(1, 3) = 1.0;
    m.motion.Q = Eigen::MatrixXd::Identity(4, 4) * 0.1;
    m.motion.p_s = p_s;
    m.measurement.H = Eigen::MatrixXd::Zero(2, 4);
    m.measurement.H(0, 0) = 1.0;
    m.measurement.H(1, 1) = 1.0;
    m.measurement.R = Eigen::MatrixXd::Identity(2, 2);
    m.measurement.p_d = p_d;
    m.clutter.rate = clutter_rate;
    m.clutter.lower = Eigen::VectorXd::Constant(2, -100.0);
    m.clutter.upper = Eigen::VectorXd::Constant(2, 100.0);
    return m;
}

GaussianMixture births(double w) {
    GaussianMixture gm;
    gm.add({w, Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Identity(4, 4) * 10.0});
    return gm;
}

bool same(const Simulation& a, const Simulation& b) {
    if (a.truth.size() != b.truth.size() || a.measurements.size() != b.measurements.size()) return false;
    for (std::size_t k = 0; k < a.truth.size(); ++k) {
        const auto& ta = a.truth[k].targets;
        const auto& tb = b.truth[k].targets;
        if (ta.size() != tb.size()) return false;
        for (std::size_t i = 0; i < ta.size(); ++i)
            if (ta[i].id != tb[i].id || ta[i].x != tb[i].x || ta[i].detected != tb[i].detected) return false;
        const auto& za = a.measurements[k];
        const auto& zb = b.measurements[k];
        if (za.Z != zb.Z || za.origins != zb.origins) return false;
    }
    return true;
}

TEST(Simulator, SameSeedIsBitIdentical) {
    ScenarioModel m = plane_model(0.95, 0.8, 3.0);
    m.birth = births(0.3);
    EXPECT_TRUE(same(simulate(m, 30, 99U), simulate(m, 30, 99U)));
    EXPECT_FALSE(same(simulate(m, 30, 99U), simulate(m, 30, 100U)));
}

TEST(Simulator, SubstreamsAreDistinct) {
    std::set<std::uint64_t> seeds;
    for (int k = 0; k < 10; ++k)
        for (auto p : {SimProcess::survival, SimProcess::motion, SimProcess::birth, SimProcess::detection,
                       SimProcess::measurement_noise, SimProcess::clutter})
            seeds.insert(substream_seed(42U, k, p));
    EXPECT_EQ(seeds.size(), 60U);
}

TEST(Simulator, ClutterChangesNeverPerturbTrajectories) {
    ScenarioModel quiet = plane_model(0.95, 0.8, 0.0);
    quiet.birth = births(0.3);
    ScenarioModel noisy = quiet;
    noisy.clutter.rate = 10.0;
    const Simulation a = simulate(quiet, 25, 5U);
    const Simulation b = simulate(noisy, 25, 5U);
    ASSERT_EQ(a.truth.size(), b.truth.size());
    for (std::size_t k = 0; k < a.truth.size(); ++k) {
        ASSERT_EQ(a.truth[k].targets.size(), b.truth[k].targets.size());
        for (std::size_t i = 0; i < a.truth[k].targets.size(); ++i)
            EXPECT_EQ(a.truth[k].targets[i].x, b.truth[k].targets[i].x);
    }
}

TEST(Simulator, CertainDetectionWithoutClutterMeasuresEveryTarget) {
    ScenarioModel m = plane_model(0.9, 1.0, 0.0);
    m.birth = births(0.5);
    const Simulation sim = simulate(m, 40, 3U);
    ASSERT_EQ(sim.truth.size(), 40U);
    for (std::size_t k = 0; k < sim.truth.size(); ++k)
        EXPECT_EQ(sim.measurements[k].Z.size(), sim.truth[k].targets.size());
}

TEST(Simulator, ClutterCountFollowsTheRate) {
    const ScenarioModel m = plane_model(1.0, 1.0, 5.0);
    const int steps = 10000;
    const Simulation sim = simulate(m, steps, 2024U);
    double total = 0.0;
    for (const auto& r : sim.measurements) {
        total += static_cast<double>(r.Z.size());
        for (const auto& z : r.Z) EXPECT_TRUE((z.array().abs() <= 100.0).all());
    }
    const double mean = total / steps;
    EXPECT_LT(std::abs(mean - 5.0), 3.0 * std::sqrt(5.0 / steps) * std::sqrt(5.0));
}

TEST(Simulator, FlagsAreMonotoneAndOriginsInjective) {
    for (auto timing : {FlagTiming::next_step, FlagTiming::same_step}) {
        ScenarioModel m = plane_model(0.97, 0.5, 2.0);
        m.birth = births(0.4);
        const Simulation sim = simulate(m, 60, 8U, timing);
        std::map<int, bool> flag;
        for (std::size_t k = 0; k < sim.truth.size(); ++k) {
            std::set<int> ids;
            for (const auto& t : sim.truth[k].targets) {
                EXPECT_TRUE(ids.insert(t.id).second);
                if (flag.count(t.id) != 0 && flag[t.id]) EXPECT_TRUE(t.detected);
                flag[t.id] = t.detected;
            }
            std::set<int> origins;
            for (int o : sim.measurements[k].origins) {
                if (o < 0) continue;
                EXPECT_TRUE(origins.insert(o).second);
                EXPECT_EQ(ids.count(o), 1U);
            }
            if (timing == FlagTiming::same_step) {
                for (const auto& t : sim.truth[k].targets)
                    if (origins.count(t.id) != 0) EXPECT_TRUE(t.detected);
            }
        }
    }
}

TEST(Simulator, PermanentTargetsWithoutBirthKeepTheirCount) {
    const ScenarioModel m = plane_model(1.0, 0.7, 1.0);
    GaussianMixture initial;
    initial.add({1.0, Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Identity(4, 4)});
    initial.add({1.0, Eigen::VectorXd::Constant(4, 5.0), Eigen::MatrixXd::Identity(4, 4)});
    const Simulation sim = simulate(m, 30, 1U, FlagTiming::next_step, InitialPopulation{initial, true});
    for (const auto& r : sim.truth) {
        EXPECT_EQ(r.targets.size(), 2U);
        for (const auto& t : r.targets) EXPECT_TRUE(t.detected);
    }
}

TEST(Simulator, InitialWeightsAboveOneAreRejected) {
    const ScenarioModel m = plane_model(1.0, 0.7, 1.0);
    GaussianMixture initial;
    initial.add({1.5, Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Identity(4, 4)});
    EXPECT_THROW((void)simulate(m, 3, 1U, FlagTiming::next_step, InitialPopulation{initial, false}),
                 std::invalid_argument);
}

TEST(GridSimulator, DeterministicAndMonotone) {
    const GridModel g = random_grid_model(4, 3, 12U, 0.0);
    TaggedGridDensity prior(4);
    for (int x = 0; x < 4; ++x) prior.set(x, 0, 0.25);
    const GridSimulation a = simulate_grid(g, prior, 50, 77U);
    const GridSimulation b = simulate_grid(g, prior, 50, 77U);
    ASSERT_EQ(a.truth.size(), 51U);
    ASSERT_EQ(a.measurements.size(), 50U);
    bool seen = false;
    for (std::size_t k = 0; k < a.truth.size(); ++k) {
        EXPECT_EQ(a.truth[k].point, b.truth[k].point);
        EXPECT_EQ(a.truth[k].detected, b.truth[k].detected);
        if (seen) EXPECT_TRUE(a.truth[k].detected);
        seen = a.truth[k].detected;
    }
    for (const auto& r : a.measurements) EXPECT_LE(r.Z.size(), 1);
}

}  // namespace
}  // namespace udrfs
