#include "udrfs/model.hpp"

#include <cmath>

namespace udrfs {

UDTag tag_from_int(int o) {
    if (o != 0 && o != 1) throw std::invalid_argument("tag must be 0 or 1");
    return o == 1 ? UDTag::detected : UDTag::undetected;
}

double ClutterModel::volume() const {
    if (lower.size() == 0) return 0.0;
    return (upper - lower).prod();
}

double ClutterModel::density(const Eigen::VectorXd& z) const {
    if (z.size() != lower.size()) throw std::invalid_argument("clutter density: measurement dimension mismatch");
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (z[i] < lower[i] || z[i] > upper[i]) return 0.0;
    }
    return 1.0 / volume();
}

namespace {

void require_shape(const Eigen::MatrixXd& A, Eigen::Index rows, Eigen::Index cols, const char* field) {
    if (A.rows() != rows || A.cols() != cols)
        throw ConfigError(field, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
}

void require_probability(double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
}

void require_symmetric(const Eigen::MatrixXd& A, const char* field) {
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw ConfigError(field, "must be symmetric");
}

}  // namespace

void validate(const ScenarioModel& model) {
    const int n = model.state_dim;
    const int m = model.meas_dim;
    if (n <= 0) throw ConfigError("state_dim", "must be positive");
    if (m <= 0) throw ConfigError("meas_dim", "must be positive");
    require_shape(model.motion.F, n, n, "F");
    require_shape(model.motion.Q, n, n, "Q");
    require_shape(model.measurement.H, m, n, "H");
    require_shape(model.measurement.R, m, m, "R");
    require_symmetric(model.motion.Q, "Q");
    require_symmetric(model.measurement.R, "R");
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.motion.Q, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-12) throw ConfigError("Q", "must be positive semidefinite");
    }
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.measurement.R, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() <= 0.0) throw ConfigError("R", "must be positive definite");
    }
    require_probability(model.motion.p_s, "p_s");
    require_probability(model.measurement.p_d, "p_d");
    if (!(model.clutter.rate >= 0.0) || !std::isfinite(model.clutter.rate))
        throw ConfigError("clutter.rate", "must be finite and nonnegative");
    if (model.clutter.lower.size() != m || model.clutter.upper.size() != m)
        throw ConfigError("clutter.region", "bounds must have meas_dim entries");
    if (!((model.clutter.upper - model.clutter.lower).array() > 0.0).all())
        throw ConfigError("clutter.region", "upper bounds must exceed lower bounds");
    for (std::size_t i = 0; i < model.birth.size(); ++i) {
        const auto& c = model.birth.components[i];
        const std::string field = "birth[" + std::to_string(i) + "]";
        if (c.mean.size() != n) throw ConfigError(field, "mean must have state_dim entries");
        try {
            validate_component(c);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(field, e.what());
        }
    }
}

double clutter_set_density(const ClutterModel& clutter, std::span<const Eigen::VectorXd> Z) {
    double v = std::exp(-clutter.rate);
    for (const auto& z : Z) v *= clutter.intensity(z);
    return v;
}

}  // namespace udrfs
