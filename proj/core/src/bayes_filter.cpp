#include "udrfs/bayes_filter.hpp"

#include "udrfs/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace udrfs {

TaggedGridDensity::TaggedGridDensity(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() % 2 != 0) throw std::invalid_argument("TaggedGridDensity: needs two entries per state");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("TaggedGridDensity: values must be nonnegative");
    }
}

double TaggedGridDensity::tag_mass(int o) const {
    double s = 0.0;
    for (int x = 0; x < num_states(); ++x) s += at(x, o);
    return s;
}

double TaggedGridDensity::total() const { return tag_mass(0) + tag_mass(1); }

TaggedStep dud_single_step(const TaggedGridDensity& prior, PointSet Z, const GridModel& model,
                           const SingleTargetJtf& jtf) {
    const int n = model.num_states();
    if (prior.num_states() != n) throw std::invalid_argument("dud_single_step: prior size does not match the model");
    if (Z.size() > 1) throw std::invalid_argument("dud_single_step: at most one measurement per scan");
    TaggedGridDensity post(n);
    double norm = 0.0;
    for (int x = 0; x < n; ++x) {
        for (int o = 0; o < 2; ++o) {
            double v = 0.0;
            for (int xp = 0; xp < n; ++xp) {
                for (int op = 0; op < 2; ++op) {
                    const double p = prior.at(xp, op);
                    if (p != 0.0) v += jtf(Z, x, o, xp, op, model) * p;
                }
            }
            post.set(x, o, v);
            norm += v;
        }
    }
    if (!(norm > 0.0)) throw MeasurementImpossible();
    for (int x = 0; x < n; ++x) {
        for (int o = 0; o < 2; ++o) post.set(x, o, post.at(x, o) / norm);
    }
    return {std::move(post), norm};
}

UntaggedStep single_step(const Eigen::VectorXd& prior, PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    if (prior.size() != n) throw std::invalid_argument("single_step: prior size does not match the model");
    Eigen::VectorXd post(n);
    for (int x = 0; x < n; ++x) {
        double v = 0.0;
        for (int xp = 0; xp < n; ++xp) v += cjtf(Z, x, xp, model) * prior[xp];
        post[x] = v;
    }
    const double norm = post.sum();
    if (!(norm > 0.0)) throw MeasurementImpossible();
    return {post / norm, norm};
}

Eigen::VectorXd bernoulli_lhat(PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    Eigen::VectorXd lhat(n);
    const std::vector<int> zs = Z.elements();
    for (int z : zs) {
        if (!(model.kappa(z) > 0.0)) throw std::domain_error("clutter intensity vanishes at a measurement");
    }
    for (int x = 0; x < n; ++x) {
        double s = 0.0;
        for (int z : zs) s += model.lik(z, x) / model.kappa(z);
        lhat[x] = 1.0 - model.p_d_at(x) + model.p_d_at(x) * s;
    }
    return lhat;
}

namespace {

void check_existence_mass(double mass, const char* what) {
    if (mass > 1.0 + 1e-10) throw std::invalid_argument(std::string(what) + " mass exceeds 1");
}

/// Survival-weighted motion: sum_x' p_S(x') D(x') markov(x', x).
Eigen::VectorXd grid_propagate(const Eigen::VectorXd& D, const GridModel& model) {
    return model.markov.transpose() * model.p_s.cwiseProduct(D);
}

}  // namespace

Eigen::VectorXd bernoulli_single_step(const Eigen::VectorXd& prior, PointSet Z, const GridModel& model) {
    const double mass = prior.sum();
    check_existence_mass(mass, "Bernoulli prior");
    check_existence_mass(model.birth.sum(), "birth");
    const Eigen::VectorXd lhat = bernoulli_lhat(Z, model);
    const Eigen::VectorXd moved = grid_propagate(prior, model);
    const Eigen::VectorXd numerator = lhat.cwiseProduct(model.birth) * (1.0 - mass) + lhat.cwiseProduct(moved);
    const double birth_term = 1.0 - model.birth.sum() + model.birth.dot(lhat);
    const double denominator =
        birth_term * (1.0 - mass) + (Eigen::VectorXd::Ones(prior.size()) - model.p_s).dot(prior) + moved.dot(lhat);
    if (!(denominator > 0.0)) throw MeasurementImpossible();
    return numerator / denominator;
}

GridUD dud_bernoulli_single_step(const GridUD& prior, PointSet Z, const GridModel& model) {
    const double mass = prior.d_part.sum() + prior.u_part.sum();
    check_existence_mass(mass, "Bernoulli prior");
    check_existence_mass(model.birth.sum(), "birth");
    const Eigen::VectorXd lhat = bernoulli_lhat(Z, model);
    const Eigen::VectorXd moved_d = grid_propagate(prior.d_part, model);
    const Eigen::VectorXd moved_u = grid_propagate(prior.u_part, model);
    const bool empty = Z.empty();

    GridUD out;
    out.d_part = lhat.cwiseProduct(moved_d);
    out.u_part = lhat.cwiseProduct(model.birth) * (1.0 - mass);
    if (empty) {
        out.u_part += lhat.cwiseProduct(moved_u);
    } else {
        out.d_part += lhat.cwiseProduct(moved_u);
    }
    const Eigen::VectorXd one_minus_ps = Eigen::VectorXd::Ones(model.num_states()) - model.p_s;
    const double birth_term = 1.0 - model.birth.sum() + model.birth.dot(lhat);
    const double denominator = birth_term * (1.0 - mass) + one_minus_ps.dot(prior.d_part) +
                               one_minus_ps.dot(prior.u_part) + moved_d.dot(lhat) + moved_u.dot(lhat);
    if (!(denominator > 0.0)) throw MeasurementImpossible();
    out.d_part /= denominator;
    out.u_part /= denominator;
    return out;
}

namespace {

/// L_Z . G as a mixture, plus its integral G[L_Z].
struct LhatProduct {
    GaussianMixture mixture;
    double integral = 0.0;
};

LhatProduct apply_lhat(const GaussianMixture& G, const MeasurementList& Z, const std::vector<double>& kappa,
                       const MeasurementModel& meas) {
    LhatProduct out;
    const double missed = 1.0 - meas.p_d;
    for (const auto& c : G.components) {
        GaussianComponent m = c;
        m.weight *= missed;
        out.integral += m.weight;
        out.mixture.add(std::move(m));
    }
    for (std::size_t j = 0; j < Z.size(); ++j) {
        for (const auto& c : G.components) {
            KalmanTerm t = kalman_update(c, Z[j], meas);
            t.updated.weight = c.weight * meas.p_d * t.likelihood / kappa[j];
            out.integral += t.updated.weight;
            out.mixture.add(std::move(t.updated));
        }
    }
    return out;
}

std::vector<double> checked_kappa(const MeasurementList& Z, const ClutterModel& clutter) {
    std::vector<double> kappa = clutter_intensities(Z, clutter);
    for (double k : kappa) {
        if (!(k > 0.0)) throw std::domain_error("clutter intensity vanishes at a measurement");
    }
    return kappa;
}

}  // namespace

GaussianMixture bernoulli_single_step(const GaussianMixture& prior, const MeasurementList& Z,
                                      const ScenarioModel& model) {
    const double mass = gm_mass(prior);
    const double birth_mass = gm_mass(model.birth);
    check_existence_mass(mass, "Bernoulli prior");
    check_existence_mass(birth_mass, "birth");
    const std::vector<double> kappa = checked_kappa(Z, model.clutter);

    const GaussianMixture moved = propagate(prior, model.motion);
    LhatProduct from_moved = apply_lhat(moved, Z, kappa, model.measurement);
    LhatProduct from_birth = apply_lhat(model.birth, Z, kappa, model.measurement);

    const double denominator =
        (1.0 - birth_mass + from_birth.integral) * (1.0 - mass) + mass * (1.0 - model.motion.p_s) + from_moved.integral;
    if (!(denominator > 0.0)) throw MeasurementImpossible();

    GaussianMixture out = std::move(from_moved.mixture);
    from_birth.mixture.scale(1.0 - mass);
    out.append(from_birth.mixture);
    out.scale(1.0 / denominator);
    return out;
}

UDMixture dud_bernoulli_single_step(const UDMixture& prior, const MeasurementList& Z, const ScenarioModel& model) {
    const double mass = gm_mass(prior.d_part) + gm_mass(prior.u_part);
    const double birth_mass = gm_mass(model.birth);
    check_existence_mass(mass, "Bernoulli prior");
    check_existence_mass(birth_mass, "birth");
    const std::vector<double> kappa = checked_kappa(Z, model.clutter);

    LhatProduct from_d = apply_lhat(propagate(prior.d_part, model.motion), Z, kappa, model.measurement);
    LhatProduct from_u = apply_lhat(propagate(prior.u_part, model.motion), Z, kappa, model.measurement);
    LhatProduct from_birth = apply_lhat(model.birth, Z, kappa, model.measurement);

    const double denominator = (1.0 - birth_mass + from_birth.integral) * (1.0 - mass) +
                               mass * (1.0 - model.motion.p_s) + from_d.integral + from_u.integral;
    if (!(denominator > 0.0)) throw MeasurementImpossible();

    UDMixture out;
    out.d_part = std::move(from_d.mixture);
    from_birth.mixture.scale(1.0 - mass);
    if (Z.empty()) {
        out.u_part = std::move(from_u.mixture);
    } else {
        out.d_part.append(from_u.mixture);
    }
    out.u_part.append(from_birth.mixture);
    out.d_part.scale(1.0 / denominator);
    out.u_part.scale(1.0 / denominator);
    return out;
}

}  // namespace udrfs
