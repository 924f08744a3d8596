#pragma once

#include "udrfs/grid_model.hpp"
#include "udrfs/intensity.hpp"
#include "udrfs/kalman.hpp"
#include "udrfs/model.hpp"
#include "udrfs/point_set.hpp"
#include "udrfs/transition.hpp"

#include <Eigen/Dense>

#include <vector>

namespace udrfs {

/// Single-target tagged density on a grid; entry 2x + o holds the mass of (x, o).
class TaggedGridDensity {
public:
    TaggedGridDensity() = default;
    explicit TaggedGridDensity(int num_states) : values_(2 * static_cast<std::size_t>(num_states), 0.0) {}
    explicit TaggedGridDensity(std::vector<double> values);

    [[nodiscard]] int num_states() const { return static_cast<int>(values_.size() / 2); }
    [[nodiscard]] double at(int x, int o) const { return values_[static_cast<std::size_t>(2 * x + o)]; }
    void set(int x, int o, double v) { values_[static_cast<std::size_t>(2 * x + o)] = v; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    /// Total mass carried by tag o.
    [[nodiscard]] double tag_mass(int o) const;
    [[nodiscard]] double total() const;

private:
    std::vector<double> values_;
};

struct TaggedStep {
    TaggedGridDensity posterior;
    /// f(Z_k | Z_{1:k-1}): the predicted probability of the observed scan.
    double normalizer = 0.0;
};

/// Exact single-step D-U/D Bayes filter for one target without clutter:
/// posterior(x, o) proportional to sum over (x', o') of jtf(Z, x, o | x', o') prior(x', o').
/// Throws MeasurementImpossible when the normalizer vanishes.
[[nodiscard]] TaggedStep dud_single_step(const TaggedGridDensity& prior, PointSet Z, const GridModel& model,
                                         const SingleTargetJtf& jtf = nud_jtf);

struct UntaggedStep {
    Eigen::VectorXd posterior;
    double normalizer = 0.0;
};

/// The same filter with the conventional JTF on untagged states.
[[nodiscard]] UntaggedStep single_step(const Eigen::VectorXd& prior, PointSet Z, const GridModel& model);

/// Per-state factor L_Z(x) = 1 - p_D(x) + p_D(x) sum_{z in Z} L_z(x) / kappa(z).
/// Throws std::domain_error if kappa vanishes at a measurement.
[[nodiscard]] Eigen::VectorXd bernoulli_lhat(PointSet Z, const GridModel& model);

/// Single-step Bernoulli filter on a grid. The prior is existence-weighted
/// (mass at most 1); births come from model.birth (mass at most 1).
[[nodiscard]] Eigen::VectorXd bernoulli_single_step(const Eigen::VectorXd& prior, PointSet Z, const GridModel& model);

/// Tagged single-step Bernoulli filter on a grid; births enter undetected.
[[nodiscard]] GridUD dud_bernoulli_single_step(const GridUD& prior, PointSet Z, const GridModel& model);

/// Gaussian-mixture single-step Bernoulli filter (constant p_S, p_D).
[[nodiscard]] GaussianMixture bernoulli_single_step(const GaussianMixture& prior, const MeasurementList& Z,
                                                    const ScenarioModel& model);

/// Gaussian-mixture tagged Bernoulli filter.
[[nodiscard]] UDMixture dud_bernoulli_single_step(const UDMixture& prior, const MeasurementList& Z,
                                                  const ScenarioModel& model);

}  // namespace udrfs
