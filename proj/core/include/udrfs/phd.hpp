#pragma once

#include "udrfs/gaussian_mixture.hpp"
#include "udrfs/grid_model.hpp"
#include "udrfs/intensity.hpp"
#include "udrfs/kalman.hpp"
#include "udrfs/model.hpp"
#include "udrfs/point_set.hpp"

#include <Eigen/Dense>

#include <vector>

namespace udrfs {

// Grid mode: intensities are per-state tables.

/// B + D[p_S M_x].
[[nodiscard]] Eigen::VectorXd phd_predict(const Eigen::VectorXd& D, const GridModel& model);
/// (p_D^c + sum_z p_D L_z / (kappa(z) + D_pred[p_D L_z])) D_pred.
[[nodiscard]] Eigen::VectorXd phd_update(const Eigen::VectorXd& D_pred, PointSet Z, const GridModel& model);
/// Prediction and update in one pass.
[[nodiscard]] Eigen::VectorXd phd_single_step(const Eigen::VectorXd& D_prev, PointSet Z, const GridModel& model);

struct GridSplit {
    Eigen::VectorXd detected;    // detection terms of the update
    Eigen::VectorXd undetected;  // p_D^c times the prediction
    Eigen::VectorXd total;
};
[[nodiscard]] GridSplit sud_phd_step(const Eigen::VectorXd& D_prev, PointSet Z, const GridModel& model);

/// D-U/D PHD step; births enter the undetected part.
[[nodiscard]] GridUD dud_phd_step(const GridUD& prev, PointSet Z, const GridModel& model);

// Gaussian-mixture mode (constant p_S, p_D).

/// Survivors (in input order) followed by the birth components.
[[nodiscard]] GaussianMixture phd_predict(const GaussianMixture& D, const ScenarioModel& model);
/// Missed-detection components (input order), then for each measurement the updated components.
[[nodiscard]] GaussianMixture phd_update(const GaussianMixture& D_pred, const MeasurementList& Z,
                                         const ScenarioModel& model);
/// Same component layout as phd_update(phd_predict(.)), computed in one pass.
[[nodiscard]] GaussianMixture phd_single_step(const GaussianMixture& D_prev, const MeasurementList& Z,
                                              const ScenarioModel& model);

struct MixtureSplit {
    GaussianMixture detected;
    GaussianMixture undetected;
    /// undetected followed by detected: the layout of phd_single_step.
    GaussianMixture total;
};
[[nodiscard]] MixtureSplit sud_phd_step(const GaussianMixture& D_prev, const MeasurementList& Z,
                                        const ScenarioModel& model);

[[nodiscard]] UDMixture dud_phd_step(const UDMixture& prev, const MeasurementList& Z, const ScenarioModel& model);

/// Reduces both parts of a tagged mixture.
[[nodiscard]] UDMixture reduce(const UDMixture& m, double prune_threshold, double merge_distance,
                               std::size_t max_components);

// State extraction.

struct StateEstimate {
    int count = 0;
    std::vector<UDState> states;
    /// Fewer candidate maxima than the estimated count.
    bool under_resolved = false;
};

/// Nearest integer with halves rounded up.
[[nodiscard]] int round_half_up(double mass);

/// Grid: count = round(mass); states are the highest local maxima along the
/// point order (a plateau counts once, at its leftmost point).
[[nodiscard]] StateEstimate estimate(const Eigen::VectorXd& D);
/// Mixture: component means ranked by weight stand in for the maxima.
[[nodiscard]] StateEstimate estimate(const GaussianMixture& D);

/// Tagged variants: candidates from both parts ranked together; ties go to the
/// lower index, then to the detected tag.
[[nodiscard]] StateEstimate dud_estimate(const GridUD& D);
[[nodiscard]] StateEstimate dud_estimate(const UDMixture& D);
/// Candidates from both parts, count taken from `mass` instead of the parts' own mass.
[[nodiscard]] StateEstimate dud_estimate(const UDMixture& D, double mass);

}  // namespace udrfs
