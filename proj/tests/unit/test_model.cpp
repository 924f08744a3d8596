#include "udrfs/grid_model.hpp"
#include "udrfs/model.hpp"
#include "udrfs/scenario_io.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>

namespace udrfs {
namespace {

const std::filesystem::path kScenarioDir{UDRFS_SCENARIO_DIR};

ClutterModel unit_box(double rate) {
    ClutterModel c;
    c.rate = rate;
    c.lower = Eigen::VectorXd::Zero(1);
    c.upper = Eigen::VectorXd::Constant(1, 4.0);
    return c;
}

TEST(ClutterModel, SetDensityExamples) {
    const std::vector<Eigen::VectorXd> none;
    EXPECT_NEAR(clutter_set_density(unit_box(2.0), none), std::exp(-2.0), 1e-15);
    const std::vector<Eigen::VectorXd> one{Eigen::VectorXd::Constant(1, 1.0)};
    EXPECT_DOUBLE_EQ(clutter_set_density(unit_box(0.0), one), 0.0);
    EXPECT_NEAR(clutter_set_density(unit_box(1.0), one), std::exp(-1.0) * 0.25, 1e-15);
    const std::vector<Eigen::VectorXd> outside{Eigen::VectorXd::Constant(1, 5.0)};
    EXPECT_DOUBLE_EQ(clutter_set_density(unit_box(1.0), outside), 0.0);
}

TEST(GridModel, ClutterSetDensityOnFourPointGrid) {
    GridModel g = make_grid_model(2, 4);
    g.clutter_rate = 1.0;
    EXPECT_NEAR(clutter_set_density(g, PointSet::of({2})), std::exp(-1.0) * 0.25, 1e-15);
    g.clutter_rate = 2.0;
    EXPECT_NEAR(clutter_set_density(g, PointSet{}), std::exp(-2.0), 1e-15);
}

TEST(GridModel, MultisetWeightsAndEnumeration) {
    EXPECT_DOUBLE_EQ(multiset_weight(std::vector<int>{}), 1.0);
    EXPECT_DOUBLE_EQ(multiset_weight(std::vector<int>{0, 1}), 1.0);
    EXPECT_DOUBLE_EQ(multiset_weight(std::vector<int>{1, 1, 1, 2}), 1.0 / 6.0);
    int count = 0;
    for_each_multiset(3, 2, [&](const MeasurementMultiset&) { ++count; });
    EXPECT_EQ(count, 1 + 3 + 6);
}

TEST(GridModel, NormalizeTablesRejectsBadRows) {
    GridModel g = make_grid_model(2, 2);
    g.markov(0, 0) = 0.5;
    g.markov(0, 1) = 0.2;
    try {
        normalize_tables(g);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "markov");
    }
}

TEST(Model, TagFromIntRejectsOtherValues) {
    EXPECT_EQ(tag_from_int(0), UDTag::undetected);
    EXPECT_EQ(tag_from_int(1), UDTag::detected);
    EXPECT_THROW((void)tag_from_int(2), std::invalid_argument);
}

class ScenarioErrors : public ::testing::Test {
protected:
    void SetUp() override { base_ = nlohmann::json::parse(read_file(kScenarioDir / "reference_seed42.json")); }

    static std::string field_of(const nlohmann::json& j) {
        try {
            (void)parse_scenario(j);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return "";
    }

    nlohmann::json base_;
};

TEST_F(ScenarioErrors, ReferenceScenarioParses) { EXPECT_EQ(field_of(base_), ""); }

TEST_F(ScenarioErrors, MissingAndMistypedFieldsAreNamed) {
    auto j = base_;
    j.erase("F");
    EXPECT_EQ(field_of(j), "F");
    j = base_;
    j["p_d"] = "high";
    EXPECT_EQ(field_of(j), "p_d");
    j = base_;
    j["steps"] = 0;
    EXPECT_EQ(field_of(j), "steps");
    j = base_;
    j["seed"] = -3;
    EXPECT_EQ(field_of(j), "seed");
    j = base_;
    j["flag_timing"] = "later";
    EXPECT_EQ(field_of(j), "flag_timing");
}

TEST_F(ScenarioErrors, ModelValidationNamesTheField) {
    auto j = base_;
    j["p_d"] = 1.5;
    EXPECT_EQ(field_of(j), "p_d");
    j = base_;
    j["p_s"] = -0.1;
    EXPECT_EQ(field_of(j), "p_s");
    j = base_;
    j["R"] = {{1.0, 0.0}, {0.0, -1.0}};
    EXPECT_EQ(field_of(j), "R");
    j = base_;
    j["clutter"]["rate"] = -1.0;
    EXPECT_EQ(field_of(j), "clutter.rate");
    j = base_;
    j["H"] = {{1.0, 0.0, 0.0}};
    EXPECT_EQ(field_of(j), "H");
}

TEST_F(ScenarioErrors, BirthAndInitialEntriesAreChecked) {
    auto j = base_;
    j["birth"][0]["w"] = -0.5;
    EXPECT_EQ(field_of(j).rfind("birth[0]", 0), 0U);
    j = base_;
    j["initial"][1]["w"] = 1.5;
    EXPECT_EQ(field_of(j), "initial[1].w");
    j = base_;
    j["filter"]["initial_tag"] = "maybe";
    EXPECT_EQ(field_of(j), "filter.initial_tag");
    j = base_;
    j["filter"]["max_components"] = 0;
    EXPECT_EQ(field_of(j), "filter.max_components");
}

TEST(ScenarioFiles, LoadFailuresAreConfigErrors) {
    try {
        (void)load_scenario(kScenarioDir / "does_not_exist.json");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "file");
    }
}

TEST(ScenarioFiles, FiniteScenarioParses) {
    const FiniteScenario s = load_finite_scenario(kScenarioDir / "grid_single_target.json");
    EXPECT_EQ(s.model.num_states(), 5);
    EXPECT_EQ(s.model.num_meas(), 3);
    EXPECT_EQ(s.steps, 20);
    EXPECT_NEAR(s.prior.tag_mass(0), 1.0, 1e-12);
    for (int x = 0; x < 5; ++x) EXPECT_NEAR(s.model.likelihood.col(x).sum(), 1.0, 1e-12);
}

TEST(ScenarioFiles, FinitePriorMustSumToOne) {
    auto j = nlohmann::json::parse(read_file(kScenarioDir / "grid_single_target.json"));
    j["prior"]["u"][0] = 0.5;
    try {
        (void)parse_finite_scenario(j);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "prior");
    }
}

TEST(ScenarioFiles, HashIsStable) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace udrfs
