#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace udrfs {

struct GaussianComponent {
    double weight = 0.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

/// Weighted sum of Gaussians, used for intensities and birth densities. The
/// component order is meaningful: filters append in a fixed order so that
/// two code paths producing the same mixture can be compared componentwise.
struct GaussianMixture {
    std::vector<GaussianComponent> components;

    [[nodiscard]] std::size_t size() const { return components.size(); }
    [[nodiscard]] bool empty() const { return components.empty(); }
    void add(GaussianComponent c) { components.push_back(std::move(c)); }
    void append(const GaussianMixture& other);
    /// Multiplies every weight by s.
    void scale(double s);
};

/// Throws std::invalid_argument unless weight >= 0, the covariance is symmetric
/// within 1e-12 and positive definite, and the dimensions agree.
void validate_component(const GaussianComponent& c);

/// Symmetrizes in place: A <- (A + A^T) / 2.
void symmetrize(Eigen::MatrixXd& A);

/// D[1]: the total mass.
[[nodiscard]] double gm_mass(const GaussianMixture& gm);

/// sum_i w_i N(x; m_i, P_i). Throws std::invalid_argument on a dimension mismatch.
[[nodiscard]] double gm_eval(const GaussianMixture& gm, const Eigen::VectorXd& x);

/// N(x; mean, cov) for a positive-definite covariance.
[[nodiscard]] double gaussian_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

/// Prune components with weight below prune_threshold, merge clusters within
/// Mahalanobis distance merge_distance of the heaviest remaining component, then
/// keep the max_components heaviest. Weights are never renormalized.
[[nodiscard]] GaussianMixture gm_reduce(const GaussianMixture& gm, double prune_threshold, double merge_distance,
                                        std::size_t max_components);

}  // namespace udrfs
