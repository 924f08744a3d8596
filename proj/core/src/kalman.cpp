#include "udrfs/kalman.hpp"

namespace udrfs {

GaussianComponent propagate(const GaussianComponent& c, const MotionModel& motion) {
    GaussianComponent out;
    out.weight = c.weight;
    out.mean = motion.F * c.mean;
    out.cov = motion.F * c.cov * motion.F.transpose() + motion.Q;
    symmetrize(out.cov);
    return out;
}

GaussianMixture propagate(const GaussianMixture& gm, const MotionModel& motion) {
    GaussianMixture out;
    out.components.reserve(gm.size());
    for (const auto& c : gm.components) {
        GaussianComponent p = propagate(c, motion);
        p.weight *= motion.p_s;
        out.add(std::move(p));
    }
    return out;
}

KalmanTerm kalman_update(const GaussianComponent& c, const Eigen::VectorXd& z, const MeasurementModel& meas) {
    const Eigen::MatrixXd& H = meas.H;
    Eigen::MatrixXd S = H * c.cov * H.transpose() + meas.R;
    symmetrize(S);
    const Eigen::LLT<Eigen::MatrixXd> llt(S);
    const Eigen::VectorXd innovation = z - H * c.mean;
    const Eigen::MatrixXd K = llt.solve(H * c.cov).transpose();
    const Eigen::MatrixXd I_KH = Eigen::MatrixXd::Identity(c.cov.rows(), c.cov.cols()) - K * H;

    KalmanTerm t;
    t.likelihood = gaussian_density(z, H * c.mean, S);
    t.updated.weight = c.weight;
    t.updated.mean = c.mean + K * innovation;
    t.updated.cov = I_KH * c.cov * I_KH.transpose() + K * meas.R * K.transpose();
    symmetrize(t.updated.cov);
    return t;
}

std::vector<double> clutter_intensities(const MeasurementList& Z, const ClutterModel& clutter) {
    std::vector<double> k;
    k.reserve(Z.size());
    for (const auto& z : Z) k.push_back(clutter.intensity(z));
    return k;
}

}  // namespace udrfs
