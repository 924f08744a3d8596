#include "udrfs/set_calculus.hpp"
#include "udrfs/tagged.hpp"

#include <gtest/gtest.h>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <cmath>

namespace udrfs {
namespace {

FiniteSetDensity random_density(int n, int cap, unsigned seed) {
    boost::random::mt19937 rng(seed);
    boost::random::uniform_real_distribution<double> u(0.05, 1.0);
    FiniteSetDensity f{FiniteSpace(n, cap)};
    f.space().for_each_subset([&](PointSet X) { f.set(X, u(rng)); });
    return f.normalized();
}

TEST(PointSet, SubsetEnumerationVisitsEverySubsetOnce) {
    int count = 0;
    for_each_subset(PointSet::of({0, 2, 5}), [&](PointSet) { ++count; });
    EXPECT_EQ(count, 8);
    int small = 0;
    for_each_subset_up_to(PointSet::full(5), 2, [&](PointSet) { ++small; });
    EXPECT_EQ(small, 1 + 5 + 10);
}

TEST(SetIntegral, EmptySetOnlyDensityIntegratesToOne) {
    FiniteSetDensity f{FiniteSpace(3)};
    f.set(PointSet{}, 1.0);
    EXPECT_DOUBLE_EQ(set_integral(f), 1.0);
}

TEST(SetIntegral, UniformOverAllSubsets) {
    const int n = 4;
    FiniteSetDensity f{FiniteSpace(n)};
    f.space().for_each_subset([&](PointSet X) { f.set(X, 1.0 / 16.0); });
    EXPECT_NEAR(set_integral(f), 1.0, 1e-15);
}

TEST(SetIntegral, TwoPointExample) {
    FiniteSetDensity f{FiniteSpace(2)};
    f.set(PointSet{}, 0.5);
    f.set(PointSet::of({0}), 0.3);
    f.set(PointSet::of({1}), 0.2);
    EXPECT_NEAR(set_integral(f), 1.0, 1e-15);
}

TEST(FiniteSetDensity, RejectsSetsBeyondCapAndNegativeValues) {
    FiniteSetDensity f{FiniteSpace(3, 1)};
    EXPECT_THROW(f.set(PointSet::of({0, 1}), 0.1), std::invalid_argument);
    EXPECT_THROW(f.set(PointSet::of({0}), -0.1), std::invalid_argument);
    EXPECT_DOUBLE_EQ(f(PointSet::of({0, 1})), 0.0);
}

TEST(Pgfl, ConstantOneGivesTotalMassAndZeroGivesEmptySetValue) {
    const FiniteSetDensity f = random_density(4, 3, 1U);
    EXPECT_NEAR(pgfl_eval(f, TestFunction::constant(4, 1.0)), 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(pgfl_eval(f, TestFunction::constant(4, 0.0)), f(PointSet{}));
}

TEST(Pgfl, BernoulliClosedForm) {
    // G[h] = 1 - d + d h.
    const double d = 0.4;
    FiniteSetDensity f{FiniteSpace(1)};
    f.set(PointSet{}, 1.0 - d);
    f.set(PointSet::of({0}), d);
    for (double h : {0.0, 0.3, 0.8, 1.0}) {
        EXPECT_NEAR(pgfl_eval(f, TestFunction({h})), 1.0 - d + d * h, 1e-15);
    }
}

TEST(Pgfl, IndicatorEqualsBeliefMass) {
    const FiniteSetDensity f = random_density(4, 4, 2U);
    for_each_subset(PointSet::full(4), [&](PointSet S) {
        EXPECT_NEAR(pgfl_eval(f, TestFunction::indicator(4, S)), belief_mass(f, S), 1e-15);
    });
}

TEST(FunctionalDerivative, EmptySetGivesThePgfl) {
    const FiniteSetDensity f = random_density(3, 3, 3U);
    const TestFunction h({0.2, 0.5, 0.9});
    EXPECT_NEAR(functional_derivative(f, PointSet{}, h), pgfl_eval(f, h), 1e-15);
}

TEST(FunctionalDerivative, AtZeroRecoversTheDensity) {
    const FiniteSetDensity f = random_density(3, 3, 4U);
    const TestFunction zero = TestFunction::constant(3, 0.0);
    f.space().for_each_subset([&](PointSet X) { EXPECT_DOUBLE_EQ(functional_derivative(f, X, zero), f(X)); });
}

TEST(FunctionalDerivative, TwoPointWorkedExample) {
    FiniteSetDensity f{FiniteSpace(2)};
    f.set(PointSet{}, 0.5);
    f.set(PointSet::of({0}), 0.3);
    f.set(PointSet::of({0, 1}), 0.2);
    EXPECT_NEAR(functional_derivative(f, PointSet::of({0}), TestFunction::constant(2, 1.0)), 0.5, 1e-15);
}

TEST(FunctionalDerivative, MoebiusInversionMatchesRadonNikodymAtZero) {
    const FiniteSetDensity f = random_density(4, 4, 5U);
    const Functional G = [&](std::span<const double> h) { return pgfl_eval(f, TestFunction({h.begin(), h.end()})); };
    const FiniteSetDensity g = density_from_pgfl(G, f.space());
    EXPECT_LT(max_abs_difference(f, g), 1e-14);
}

TEST(Censor, FullSpaceLeavesTheDensityUnchanged) {
    const FiniteSetDensity f = random_density(3, 3, 6U);
    EXPECT_LT(max_abs_difference(censor(f, PointSet::full(3)), f), 1e-15);
}

TEST(Censor, EmptyRegionConcentratesOnTheEmptySet) {
    const FiniteSetDensity f = random_density(3, 3, 7U);
    const FiniteSetDensity c = censor(f, PointSet{});
    EXPECT_NEAR(c(PointSet{}), 1.0, 1e-15);
    EXPECT_NEAR(set_integral(c), 1.0, 1e-15);
}

TEST(Censor, TaggedTwoPointWorkedExample) {
    // Points: (x, 0) at index 0, (x, 1) at index 1.
    FiniteSetDensity f{FiniteSpace(2)};
    f.set(PointSet{}, 0.2);
    f.set(PointSet::of({0}), 0.3);
    f.set(PointSet::of({1}), 0.5);
    const FiniteSetDensity c = censor(f, detected_region(1));
    EXPECT_NEAR(c(PointSet{}), 0.5, 1e-15);
    EXPECT_NEAR(c(PointSet::of({1})), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(c(PointSet::of({0})), 0.0);
}

TEST(Censor, IdempotentAndComposesByIntersection) {
    const FiniteSetDensity f = random_density(4, 3, 8U);
    for_each_subset(PointSet::full(4), [&](PointSet O1) {
        const FiniteSetDensity once = censor(f, O1);
        EXPECT_LT(max_abs_difference(censor(once, O1), once), 1e-15);
        const PointSet O2 = PointSet::of({1, 2});
        EXPECT_LT(max_abs_difference(censor(f, O1 & O2), censor(once, O2)), 1e-15);
    });
}

TEST(Tagged, IndexLayoutAndRegions) {
    EXPECT_EQ(tagged_index(3, 1), 7);
    EXPECT_EQ(base_of(7), 3);
    EXPECT_EQ(tag_of(7), 1);
    EXPECT_EQ(detected_region(3), PointSet::of({1, 3, 5}));
    EXPECT_EQ(undetected_region(3), PointSet::of({0, 2, 4}));
    EXPECT_TRUE(base_distinct(PointSet::of({0, 3, 5})));
    EXPECT_FALSE(base_distinct(PointSet::of({2, 3})));
}

TEST(Tagged, TestFunctionTransformsMatchIndicatorAlgebra) {
    // h^D = 1 - (1 - h) 1_D and h^U = 1 - (1 - h) 1_U.
    const std::vector<double> h{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    const auto d = on_detected(h);
    const auto u = on_undetected(h);
    const auto r1 = restrict_detected(h);
    for (int i = 0; i < 6; ++i) {
        const double in_d = tag_of(i) == 1 ? 1.0 : 0.0;
        EXPECT_DOUBLE_EQ(d[static_cast<std::size_t>(i)], 1.0 - (1.0 - h[static_cast<std::size_t>(i)]) * in_d);
        EXPECT_DOUBLE_EQ(u[static_cast<std::size_t>(i)], 1.0 - (1.0 - h[static_cast<std::size_t>(i)]) * (1.0 - in_d));
        EXPECT_DOUBLE_EQ(r1[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(tagged_index(base_of(i), 1))]);
    }
}

}  // namespace
}  // namespace udrfs
