#include "udrfs/oracle.hpp"
#include "udrfs/tagged.hpp"
#include "udrfs/transition.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace udrfs {
namespace {

GridModel example_model(double p_d, double lik, double markov) {
    GridModel g = make_grid_model(2, 2);
    g.p_d.setConstant(p_d);
    g.likelihood << lik, 1.0 - lik, 1.0 - lik, lik;
    g.markov << markov, 1.0 - markov, 1.0 - markov, markov;
    return g;
}

TEST(ConventionalJtf, Examples) {
    EXPECT_DOUBLE_EQ(cjtf(PointSet{}, 0, 0, example_model(1.0, 0.5, 0.5)), 0.0);
    EXPECT_NEAR(cjtf(PointSet{}, 0, 0, example_model(0.3, 0.5, 0.5)), 0.35, 1e-15);
    EXPECT_DOUBLE_EQ(cjtf(PointSet::of({0, 1}), 0, 0, example_model(0.3, 0.5, 0.5)), 0.0);
}

TEST(NovelJtf, Examples) {
    const GridModel g = example_model(0.7, 0.4, 1.0);
    for (PointSet Z : {PointSet{}, PointSet::of({0}), PointSet::of({1})}) {
        EXPECT_DOUBLE_EQ(nud_jtf(Z, 0, 0, 0, 1, g), 0.0);
    }
    EXPECT_DOUBLE_EQ(nud_jtf(PointSet::of({0}), 0, 0, 0, 0, g), 0.0);
    EXPECT_NEAR(nud_jtf(PointSet::of({0}), 0, 1, 0, 0, g), 0.28, 1e-15);
}

TEST(NovelJtf, CompactFormMatchesCaseDefinition) {
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const GridModel g = random_grid_model(3, 2, seed, 0.0);
        for (PointSet Z : {PointSet{}, PointSet::of({0}), PointSet::of({1}), PointSet::of({0, 1})}) {
            for (int x = 0; x < 3; ++x)
                for (int o = 0; o < 2; ++o)
                    for (int xp = 0; xp < 3; ++xp)
                        for (int op = 0; op < 2; ++op)
                            EXPECT_EQ(nud_jtf(Z, x, o, xp, op, g), nud_jtf_five_case(Z, x, o, xp, op, g));
        }
    }
}

TEST(NovelJtf, NormalizedAndMarginalizesToConventional) {
    const GridModel g = random_grid_model(4, 3, 17U, 0.0);
    for (int xp = 0; xp < 4; ++xp) {
        for (int op = 0; op < 2; ++op) {
            double total = 0.0;
            for (PointSet Z : {PointSet{}, PointSet::of({0}), PointSet::of({1}), PointSet::of({2})}) {
                for (int x = 0; x < 4; ++x) {
                    const double sum_o = nud_jtf(Z, x, 0, xp, op, g) + nud_jtf(Z, x, 1, xp, op, g);
                    EXPECT_NEAR(sum_o, cjtf(Z, x, xp, g), 1e-15);
                    total += sum_o;
                }
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(BernoulliJtf, Examples) {
    GridModel g = random_grid_model(3, 3, 5U, 1.5);
    const std::vector<int> Z{0, 2};
    const std::vector<int> empty;
    EXPECT_DOUBLE_EQ(nud_jtf_bernoulli(Z, 1, 0, 2, 0, g), 0.0);
    EXPECT_DOUBLE_EQ(nud_jtf_bernoulli(empty, 1, 1, 2, 0, g), 0.0);
    EXPECT_DOUBLE_EQ(nud_jtf_bernoulli(Z, 1, 0, 2, 1, g), 0.0);
    for (int x = 0; x < 3; ++x) {
        for (int xp = 0; xp < 3; ++xp) {
            const double kernel = standard_meas_density(PointSet::of({x}), PointSet::of({0, 2}), g) * g.markov(xp, x);
            EXPECT_NEAR(nud_jtf_bernoulli(Z, x, 1, xp, 1, g), kernel, 1e-15);
            EXPECT_NEAR(nud_jtf_bernoulli(Z, x, 1, xp, 0, g), kernel, 1e-15);
        }
    }
}

TEST(MultitargetJtf, Examples) {
    GridModel g = aligned(random_grid_model(2, 3, 9U, 0.8));
    const std::vector<int> Z{0, 2};
    EXPECT_NEAR(nud_jtf_multitarget(Z, PointSet{}, PointSet{}, g), clutter_set_density(g, PointSet::of({0, 2})), 1e-15);
    EXPECT_DOUBLE_EQ(nud_jtf_multitarget(Z, PointSet::of({tagged_index(0, 1)}), PointSet{}, g), 0.0);
    EXPECT_DOUBLE_EQ(nud_jtf_multitarget(Z, PointSet{}, PointSet::of({tagged_index(1, 0)}), g), 0.0);
}

TEST(MultitargetJtf, SingleTargetMatchesDirectEnumeration) {
    // One target at base x: missed (stays U or D) or detected at one z (becomes D), rest clutter.
    GridModel g = aligned(random_grid_model(2, 3, 11U, 0.8));
    const double e = std::exp(-g.clutter_rate);
    for (int x = 0; x < 2; ++x) {
        for (const std::vector<int>& Z : {std::vector<int>{}, std::vector<int>{1}, std::vector<int>{0, 2}}) {
            double clutter_all = e;
            for (int z : Z) clutter_all *= g.kappa(z);
            double detect = 0.0;
            for (std::size_t j = 0; j < Z.size(); ++j) {
                double rest = e;
                for (std::size_t i = 0; i < Z.size(); ++i)
                    if (i != j) rest *= g.kappa(Z[i]);
                detect += g.p_d[x] * g.lik(Z[j], x) * rest;
            }
            const double missed = g.missed(x) * clutter_all;
            const PointSet u = PointSet::of({tagged_index(x, 0)});
            const PointSet d = PointSet::of({tagged_index(x, 1)});
            EXPECT_NEAR(nud_jtf_multitarget(Z, u, u, g), missed, 1e-15);
            EXPECT_NEAR(nud_jtf_multitarget(Z, d, u, g), detect, 1e-15);
            EXPECT_NEAR(nud_jtf_multitarget(Z, d, d, g), missed + detect, 1e-15);
            EXPECT_DOUBLE_EQ(nud_jtf_multitarget(Z, u, d, g), 0.0);
        }
    }
}

TEST(MultitargetJtf, EnumerationLimitsAreEnforced) {
    GridModel g = aligned(random_grid_model(3, 2, 3U, 0.5));
    const std::vector<int> Z{0, 0, 1};
    const PointSet X = PointSet::of({0, 2, 4});
    EXPECT_NO_THROW((void)nud_jtf_multitarget(Z, X, X, g));
    EXPECT_THROW((void)nud_jtf_multitarget(Z, X, X, g, MultitargetLimits{2, 4}), std::invalid_argument);
    EXPECT_THROW((void)nud_jtf_multitarget(Z, X, X, g, MultitargetLimits{4, 2}), std::invalid_argument);
}

TEST(MultitargetJtf, PartialPgflAtOneIsNormalizedAndAtZeroRecoversEmptyScan) {
    GridModel g = aligned(random_grid_model(2, 2, 21U, 0.7));
    const std::vector<double> ones(2, 1.0);
    const std::vector<double> zeros(2, 0.0);
    const PointSet space = PointSet::full(4);
    for (PointSet X_prev : {PointSet{}, PointSet::of({0}), PointSet::of({3}), PointSet::of({0, 3}), PointSet::of({1, 3})}) {
        double total = 0.0;
        for_each_subset(space, [&](PointSet X) {
            if (!base_distinct(X)) return;
            total += nud_partial_pgfl(ones, X, X_prev, g);
            EXPECT_NEAR(nud_partial_pgfl(zeros, X, X_prev, g), nud_jtf_multitarget(std::vector<int>{}, X, X_prev, g),
                        1e-15);
        });
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(MeasurementTruncation, GrowsWithRateAndExtra) {
    EXPECT_GE(measurement_truncation(0.0, 2), 2);
    EXPECT_GT(measurement_truncation(2.0, 0), measurement_truncation(0.5, 0));
    EXPECT_EQ(measurement_truncation(1.0, 3), measurement_truncation(1.0, 0) + 3);
}

}  // namespace
}  // namespace udrfs
