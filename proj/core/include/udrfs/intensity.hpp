#pragma once

#include "udrfs/gaussian_mixture.hpp"

#include <Eigen/Dense>

namespace udrfs {

/// Tagged intensity in Gaussian-mixture form: d_part is the intensity of
/// detected targets, u_part that of undetected ones.
struct UDMixture {
    GaussianMixture d_part;
    GaussianMixture u_part;
};

/// Tagged intensity on a finite grid.
struct GridUD {
    Eigen::VectorXd d_part;
    Eigen::VectorXd u_part;
};

}  // namespace udrfs
