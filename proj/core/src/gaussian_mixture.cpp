#include "udrfs/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace udrfs {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

}  // namespace

void GaussianMixture::append(const GaussianMixture& other) {
    components.insert(components.end(), other.components.begin(), other.components.end());
}

void GaussianMixture::scale(double s) {
    for (auto& c : components) c.weight *= s;
}

void validate_component(const GaussianComponent& c) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight))
        throw std::invalid_argument("Gaussian component weight must be finite and nonnegative");
    const auto n = c.mean.size();
    if (c.cov.rows() != n || c.cov.cols() != n)
        throw std::invalid_argument("Gaussian component covariance does not match the mean dimension");
    if ((c.cov - c.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Gaussian component covariance is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.cov, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("Gaussian component covariance is not positive definite");
}

void symmetrize(Eigen::MatrixXd& A) {
    A = (0.5 * (A + A.transpose())).eval();
}

double gm_mass(const GaussianMixture& gm) {
    double m = 0.0;
    for (const auto& c : gm.components) m += c.weight;
    return m;
}

double gaussian_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw std::domain_error("gaussian_density: covariance not positive definite");
    const Eigen::VectorXd r = llt.matrixL().solve(x - mean);
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return std::exp(-0.5 * (r.squaredNorm() + log_det + static_cast<double>(x.size()) * kLog2Pi));
}

double gm_eval(const GaussianMixture& gm, const Eigen::VectorXd& x) {
    double v = 0.0;
    for (const auto& c : gm.components) {
        if (c.mean.size() != x.size()) throw std::invalid_argument("gm_eval: state dimension mismatch");
        v += c.weight * gaussian_density(x, c.mean, c.cov);
    }
    return v;
}

GaussianMixture gm_reduce(const GaussianMixture& gm, double prune_threshold, double merge_distance,
                          std::size_t max_components) {
    if (prune_threshold < 0.0 || merge_distance < 0.0)
        throw std::invalid_argument("gm_reduce: thresholds must be nonnegative");

    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < gm.size(); ++i) {
        if (gm.components[i].weight >= prune_threshold) live.push_back(i);
    }
    // Heaviest first; equal weights keep their original order.
    std::stable_sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
        return gm.components[a].weight > gm.components[b].weight;
    });

    GaussianMixture merged;
    std::vector<bool> used(gm.size(), false);
    for (std::size_t lead : live) {
        if (used[lead]) continue;
        const auto& anchor = gm.components[lead];
        const Eigen::LLT<Eigen::MatrixXd> llt(anchor.cov);
        std::vector<std::size_t> cluster;
        for (std::size_t i : live) {
            if (used[i]) continue;
            const Eigen::VectorXd d = gm.components[i].mean - anchor.mean;
            const double dist = d.dot(llt.solve(d));
            if (dist <= merge_distance) cluster.push_back(i);
        }
        GaussianComponent out;
        out.weight = 0.0;
        for (std::size_t i : cluster) {
            used[i] = true;
            out.weight += gm.components[i].weight;
        }
        if (out.weight > 0.0) {
            out.mean = Eigen::VectorXd::Zero(anchor.mean.size());
            for (std::size_t i : cluster) out.mean += gm.components[i].weight * gm.components[i].mean;
            out.mean /= out.weight;
            out.cov = Eigen::MatrixXd::Zero(anchor.cov.rows(), anchor.cov.cols());
            for (std::size_t i : cluster) {
                const Eigen::VectorXd d = out.mean - gm.components[i].mean;
                out.cov += gm.components[i].weight * (gm.components[i].cov + d * d.transpose());
            }
            out.cov /= out.weight;
            symmetrize(out.cov);
        } else {
            out.mean = anchor.mean;
            out.cov = anchor.cov;
        }
        merged.add(std::move(out));
    }

    if (merged.size() > max_components) {
        std::vector<std::size_t> order(merged.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return merged.components[a].weight > merged.components[b].weight;
        });
        order.resize(max_components);
        std::sort(order.begin(), order.end());
        GaussianMixture capped;
        for (std::size_t i : order) capped.add(merged.components[i]);
        return capped;
    }
    return merged;
}

}  // namespace udrfs
