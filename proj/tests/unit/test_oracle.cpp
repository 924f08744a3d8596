#include "udrfs/brute_force.hpp"
#include "udrfs/oracle.hpp"
#include "udrfs/tagged.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace udrfs {
namespace {

GridModel two_point_model(double p_d, double rate) {
    GridModel g = make_grid_model(2, 2);
    g.p_d.setConstant(p_d);
    g.likelihood << 0.8, 0.3, 0.2, 0.7;
    g.clutter_rate = rate;
    return g;
}

FiniteSetDensity bernoulli_prior(double q) {
    FiniteSetDensity f{FiniteSpace(2, 2)};
    f.set(PointSet{}, 1.0 - q);
    f.set(PointSet::of({0}), q / 2.0);
    f.set(PointSet::of({1}), q / 2.0);
    return f;
}

FiniteSetDensity mixed_tagged_prior() {
    // Tagged space over two base points; only base-distinct sets.
    FiniteSetDensity f{FiniteSpace(4, 2)};
    f.set(PointSet{}, 0.1);
    f.set(PointSet::of({0}), 0.1);
    f.set(PointSet::of({1}), 0.15);
    f.set(PointSet::of({2}), 0.05);
    f.set(PointSet::of({3}), 0.2);
    f.set(PointSet::of({0, 2}), 0.1);
    f.set(PointSet::of({0, 3}), 0.1);
    f.set(PointSet::of({1, 2}), 0.1);
    f.set(PointSet::of({1, 3}), 0.1);
    return f;
}

TEST(StandardMeasDensity, Examples) {
    const GridModel g = two_point_model(0.6, 1.2);
    const double e = std::exp(-g.clutter_rate);
    EXPECT_NEAR(standard_meas_density(PointSet{}, PointSet::of({0, 1}), g), e * g.kappa(0) * g.kappa(1), 1e-15);
    EXPECT_NEAR(standard_meas_density(PointSet::of({1}), PointSet{}, g), e * 0.4, 1e-15);
    const double expected = e * g.kappa(0) * g.kappa(1) *
                            (0.4 + 0.6 * g.lik(0, 0) / g.kappa(0) + 0.6 * g.lik(1, 0) / g.kappa(1));
    EXPECT_NEAR(standard_meas_density(PointSet::of({0}), PointSet::of({0, 1}), g), expected, 1e-15);
}

TEST(StandardMeasDensity, ZeroClutterNeedsNoDivision) {
    const GridModel g = two_point_model(0.6, 0.0);
    EXPECT_NEAR(standard_meas_density(PointSet::of({0}), PointSet::of({1}), g), 0.6 * g.lik(1, 0), 1e-15);
    EXPECT_DOUBLE_EQ(standard_meas_density(PointSet::of({0}), PointSet::of({0, 1}), g), 0.0);
}

TEST(Fstar, Examples) {
    const GridModel g = two_point_model(0.6, 1.2);
    const std::vector<int> two{0, 1};
    EXPECT_DOUBLE_EQ(fstar(PointSet::of({0}), two, g), 0.0);
    EXPECT_NEAR(fstar(PointSet::of({0, 1}), std::vector<int>{}, g), clutter_set_density(g, PointSet::of({0, 1})), 1e-15);
}

TEST(Fstar, EqualsSubsetSumOfClutterFreeTerms) {
    const GridModel g = random_grid_model(3, 3, 4U, 1.3);
    for_each_subset(PointSet::full(3), [&](PointSet Z) {
        for_each_subset(PointSet::full(3), [&](PointSet X) {
            const std::vector<int> targets = X.elements();
            double sum = 0.0;
            for_each_subset(Z, [&](PointSet W) {
                if (W.size() == X.size()) sum += fstar_hat(W, targets, Z, g);
            });
            EXPECT_NEAR(fstar(Z, targets, g), sum, 1e-15);
        });
    });
}

TEST(BayesPosterior, PriorConcentratedStaysConcentrated) {
    const GridModel g = two_point_model(0.6, 1.0);
    FiniteSetDensity prior{FiniteSpace(2, 2)};
    prior.set(PointSet::of({1}), 1.0);
    const FiniteSetDensity post = bayes_posterior(prior, PointSet::of({0}), g);
    EXPECT_NEAR(post(PointSet::of({1})), 1.0, 1e-15);
    EXPECT_NEAR(set_integral(post), 1.0, 1e-15);
}

TEST(BayesPosterior, ConstantLikelihoodReturnsThePrior) {
    const GridModel g = two_point_model(0.0, 1.0);
    const FiniteSetDensity prior = bernoulli_prior(0.6);
    EXPECT_LT(max_abs_difference(bayes_posterior(prior, PointSet::of({1}), g), prior), 1e-15);
}

TEST(BayesPosterior, ImpossibleMeasurementThrows) {
    const GridModel g = two_point_model(0.0, 0.0);
    EXPECT_THROW((void)bayes_posterior(bernoulli_prior(0.6), PointSet::of({0}), g), MeasurementImpossible);
}

TEST(SudPosteriors, FullDetectionLeavesNoUndetectedTargets) {
    const GridModel g = two_point_model(1.0, 1.0);
    const PosteriorTriple p = sud_posteriors(bernoulli_prior(0.6), PointSet::of({0}), g);
    EXPECT_NEAR(p.undetected(PointSet{}), 1.0, 1e-15);
}

TEST(SudPosteriors, NoDetectionMakesEveryMeasurementClutter) {
    const GridModel g = two_point_model(0.0, 1.0);
    const FiniteSetDensity prior = bernoulli_prior(0.6);
    const PosteriorTriple p = sud_posteriors(prior, PointSet::of({0}), g);
    EXPECT_NEAR(p.detected(PointSet{}), 1.0, 1e-15);
    EXPECT_LT(max_abs_difference(p.undetected, prior), 1e-15);
}

TEST(SudPosteriors, TotalMatchesBayesOnBernoulliExample) {
    GridModel g = make_grid_model(2, 2);
    g.p_d.setConstant(0.5);
    g.clutter_rate = 1.0;
    const FiniteSetDensity prior = bernoulli_prior(0.6);
    const PosteriorTriple p = sud_posteriors(prior, PointSet::of({0}), g);
    EXPECT_LT(max_abs_difference(p.total, bayes_posterior(prior, PointSet::of({0}), g)), 1e-12);
}

TEST(SudPosteriors, ParallelToDetectionJointOracle) {
    const GridModel g = random_grid_model(3, 3, 8U, 0.9);
    FiniteSetDensity prior{FiniteSpace(3, 3)};
    prior.space().for_each_subset([&](PointSet X) { prior.set(X, 1.0 + X.bits()); });
    prior = prior.normalized();
    const PointSet Z = PointSet::of({0, 2});
    const PosteriorTriple p = sud_posteriors(prior, Z, g);
    const FiniteSetDensity joint = detection_joint_oracle(prior, Z, g);
    EXPECT_LT(max_abs_difference(p.detected, region_to_base(censor(joint, detected_region(3)), 1)), 1e-12);
    EXPECT_LT(max_abs_difference(p.undetected, region_to_base(censor(joint, undetected_region(3)), 0)), 1e-12);
}

TEST(DudPosteriors, DetectedOnlyPriorWithEmptyScan) {
    const GridModel g = two_point_model(0.6, 0.5);
    FiniteSetDensity prior{FiniteSpace(4, 2)};
    prior.set(PointSet{}, 0.3);
    prior.set(PointSet::of({1}), 0.3);
    prior.set(PointSet::of({3}), 0.2);
    prior.set(PointSet::of({1, 3}), 0.2);
    const PosteriorTriple p = dud_posteriors(prior, PointSet{}, g);
    EXPECT_LT(max_abs_difference(p.detected, p.total), 1e-15);
    EXPECT_NEAR(p.undetected(PointSet{}), 1.0, 1e-15);
}

TEST(DudPosteriors, UndetectedPriorWithFullDetectionBecomesDetected) {
    const GridModel g = two_point_model(1.0, 0.5);
    FiniteSetDensity prior{FiniteSpace(4, 2)};
    prior.set(PointSet::of({0}), 0.5);
    prior.set(PointSet::of({2}), 0.5);
    const PosteriorTriple p = dud_posteriors(prior, PointSet::of({0, 1}), g);
    double off_detected = 0.0;
    prior.space().for_each_subset([&](PointSet X) {
        if (!X.is_subset_of(detected_region(2))) off_detected += p.total(X);
    });
    EXPECT_LT(off_detected, 1e-15);
}

TEST(DudPosteriors, CensoringTheTotalGivesTheParts) {
    const GridModel g = two_point_model(0.6, 0.7);
    for (PointSet Z : {PointSet{}, PointSet::of({0}), PointSet::of({0, 1})}) {
        const PosteriorTriple p = dud_posteriors(mixed_tagged_prior(), Z, g);
        EXPECT_LT(max_abs_difference(censor(p.total, detected_region(2)), p.detected), 1e-12);
        EXPECT_LT(max_abs_difference(censor(p.total, undetected_region(2)), p.undetected), 1e-12);
        EXPECT_LT(max_abs_difference(p.total, dud_bayes_oracle(mixed_tagged_prior(), Z, g)), 1e-12);
    }
}

TEST(DudPosteriors, RejectsPriorsThatAreNotBaseDistinct) {
    const GridModel g = two_point_model(0.6, 0.7);
    FiniteSetDensity prior{FiniteSpace(4, 2)};
    prior.set(PointSet::of({0, 1}), 1.0);
    EXPECT_THROW((void)dud_posteriors(prior, PointSet{}, g), std::invalid_argument);
}

TEST(Tagged, ForgetTagsSumsOverTags) {
    const FiniteSetDensity f = forget_tags(mixed_tagged_prior());
    EXPECT_NEAR(f(PointSet::of({0})), 0.25, 1e-15);
    EXPECT_NEAR(f(PointSet::of({1})), 0.25, 1e-15);
    EXPECT_NEAR(f(PointSet::of({0, 1})), 0.4, 1e-15);
    EXPECT_NEAR(set_integral(f), 1.0, 1e-15);
}

}  // namespace
}  // namespace udrfs
