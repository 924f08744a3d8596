#include "udrfs/gaussian_mixture.hpp"
#include "udrfs/kalman.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace udrfs {
namespace {

GaussianComponent component(double w, double mean, double var = 1.0) {
    return {w, Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var)};
}

TEST(GaussianMixture, MassExamples) {
    EXPECT_DOUBLE_EQ(gm_mass(GaussianMixture{}), 0.0);
    GaussianMixture one;
    one.add(component(0.7, 0.0));
    EXPECT_DOUBLE_EQ(gm_mass(one), 0.7);
    GaussianMixture two;
    two.add(component(0.5, 0.0));
    two.add(component(1.9, 3.0));
    EXPECT_DOUBLE_EQ(gm_mass(two), 2.4);
}

TEST(GaussianMixture, EvalExamples) {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
    EXPECT_DOUBLE_EQ(gm_eval(GaussianMixture{}, zero), 0.0);
    GaussianMixture unit;
    unit.add(component(1.0, 0.0));
    EXPECT_NEAR(gm_eval(unit, zero), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
    GaussianMixture split;
    split.add(component(0.3, 0.0));
    split.add(component(0.7, 0.0));
    EXPECT_NEAR(gm_eval(split, zero), gm_eval(unit, zero), 1e-15);
    EXPECT_THROW((void)gm_eval(unit, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST(GaussianMixture, ValidateRejectsBadComponents) {
    EXPECT_THROW(validate_component(component(-0.1, 0.0)), std::invalid_argument);
    GaussianComponent asym{1.0, Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2)};
    asym.cov(0, 1) = 0.5;
    EXPECT_THROW(validate_component(asym), std::invalid_argument);
    GaussianComponent indefinite{1.0, Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2)};
    indefinite.cov(1, 1) = -1.0;
    EXPECT_THROW(validate_component(indefinite), std::invalid_argument);
}

TEST(GaussianMixture, ReducePrunesBelowThreshold) {
    GaussianMixture gm;
    gm.add(component(1e-6, 0.0));
    EXPECT_TRUE(gm_reduce(gm, 1e-5, 4.0, 10).empty());
}

TEST(GaussianMixture, ReduceMergesCoincidentComponents) {
    GaussianMixture gm;
    gm.add(component(0.4, 2.0, 3.0));
    gm.add(component(0.5, 2.0, 3.0));
    const GaussianMixture r = gm_reduce(gm, 1e-5, 4.0, 10);
    ASSERT_EQ(r.size(), 1U);
    EXPECT_NEAR(r.components[0].weight, 0.9, 1e-15);
    EXPECT_NEAR(r.components[0].mean[0], 2.0, 1e-15);
    EXPECT_NEAR(r.components[0].cov(0, 0), 3.0, 1e-14);
}

TEST(GaussianMixture, ReduceMergePreservesMassMeanAndSpread) {
    GaussianMixture gm;
    gm.add(component(0.6, 0.0, 1.0));
    gm.add(component(0.4, 1.0, 2.0));
    const GaussianMixture r = gm_reduce(gm, 1e-5, 4.0, 10);
    ASSERT_EQ(r.size(), 1U);
    const double mean = 0.4;
    const double var = (0.6 * (1.0 + mean * mean) + 0.4 * (2.0 + (1.0 - mean) * (1.0 - mean))) / 1.0;
    EXPECT_NEAR(r.components[0].weight, 1.0, 1e-15);
    EXPECT_NEAR(r.components[0].mean[0], mean, 1e-15);
    EXPECT_NEAR(r.components[0].cov(0, 0), var, 1e-14);
}

TEST(GaussianMixture, ReduceKeepsTheHeaviestComponents) {
    GaussianMixture gm;
    for (int i = 0; i < 10; ++i) gm.add(component(0.1 * (i + 1), 100.0 * i));
    const GaussianMixture r = gm_reduce(gm, 1e-5, 4.0, 5);
    ASSERT_EQ(r.size(), 5U);
    for (const auto& c : r.components) EXPECT_GE(c.weight, 0.6 - 1e-12);
}

TEST(Kalman, PropagateAndUpdateOneDimensional) {
    MotionModel motion{Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Constant(1, 1, 0.5), 0.9};
    const GaussianComponent c = component(2.0, 1.0, 1.0);
    const GaussianComponent moved = propagate(c, motion);
    EXPECT_DOUBLE_EQ(moved.weight, 2.0);
    EXPECT_DOUBLE_EQ(moved.cov(0, 0), 1.5);
    GaussianMixture gm;
    gm.add(c);
    EXPECT_DOUBLE_EQ(propagate(gm, motion).components[0].weight, 1.8);

    MeasurementModel meas{Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Constant(1, 1, 1.0), 0.8};
    const KalmanTerm t = kalman_update(moved, Eigen::VectorXd::Constant(1, 2.0), meas);
    // S = 2.5, K = 0.6, mean = 1 + 0.6, var = 0.6.
    EXPECT_NEAR(t.updated.mean[0], 1.6, 1e-15);
    EXPECT_NEAR(t.updated.cov(0, 0), 0.6, 1e-15);
    EXPECT_NEAR(t.likelihood, std::exp(-0.5 / 2.5) / std::sqrt(2.0 * std::numbers::pi * 2.5), 1e-15);
}

}  // namespace
}  // namespace udrfs
