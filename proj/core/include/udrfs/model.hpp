#pragma once

#include "udrfs/gaussian_mixture.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udrfs {

/// Detected (1) or undetected (0) tag carried by every D-U/D target state.
enum class UDTag : std::uint8_t { undetected = 0, detected = 1 };

[[nodiscard]] constexpr int tag_value(UDTag t) { return static_cast<int>(t); }
[[nodiscard]] UDTag tag_from_int(int o);

/// A base state paired with its tag. The base is either a real vector or a
/// finite-space index (stored in `point`, with `x` left empty).
struct UDState {
    Eigen::VectorXd x;
    int point = -1;
    UDTag tag = UDTag::detected;
};

/// Thrown for invalid model or scenario content; `field` names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct MotionModel {
    Eigen::MatrixXd F;
    Eigen::MatrixXd Q;
    double p_s = 1.0;
};

struct MeasurementModel {
    Eigen::MatrixXd H;
    Eigen::MatrixXd R;
    double p_d = 1.0;
};

/// Poisson clutter with rate `rate`, uniform over the box [lower, upper].
struct ClutterModel {
    double rate = 0.0;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    [[nodiscard]] double volume() const;
    /// Spatial density c(z): 1/volume inside the box, 0 outside.
    [[nodiscard]] double density(const Eigen::VectorXd& z) const;
    /// kappa(z) = rate * c(z).
    [[nodiscard]] double intensity(const Eigen::VectorXd& z) const { return rate * density(z); }
};

struct ScenarioModel {
    int state_dim = 0;
    int meas_dim = 0;
    MotionModel motion;
    MeasurementModel measurement;
    ClutterModel clutter;
    GaussianMixture birth;
};

/// Checks dimensional consistency, probability ranges, covariance definiteness
/// and the clutter box. Throws ConfigError.
void validate(const ScenarioModel& model);

/// e^{-rate} prod_{z in Z} rate c(z); e^{-rate} for an empty set.
[[nodiscard]] double clutter_set_density(const ClutterModel& clutter, std::span<const Eigen::VectorXd> Z);

}  // namespace udrfs
