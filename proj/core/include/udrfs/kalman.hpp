#pragma once

#include "udrfs/gaussian_mixture.hpp"
#include "udrfs/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace udrfs {

using MeasurementList = std::vector<Eigen::VectorXd>;

/// Motion step of one component: mean F m, covariance F P F^T + Q; weight unchanged.
[[nodiscard]] GaussianComponent propagate(const GaussianComponent& c, const MotionModel& motion);

/// Survival-weighted motion step of every component (weights times p_S).
[[nodiscard]] GaussianMixture propagate(const GaussianMixture& gm, const MotionModel& motion);

/// Measurement update of one component by z.
struct KalmanTerm {
    /// Predicted measurement density N(z; H m, H P H^T + R).
    double likelihood = 0.0;
    /// Posterior component, weight copied from the input.
    GaussianComponent updated;
};

/// Kalman update with the Joseph-form covariance, symmetrized afterwards.
[[nodiscard]] KalmanTerm kalman_update(const GaussianComponent& c, const Eigen::VectorXd& z,
                                       const MeasurementModel& meas);

/// kappa(z) for every measurement of the list.
[[nodiscard]] std::vector<double> clutter_intensities(const MeasurementList& Z, const ClutterModel& clutter);

}  // namespace udrfs
