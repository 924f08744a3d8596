#include "udrfs/phd.hpp"

#include <algorithm>
#include <cmath>

namespace udrfs {

Eigen::VectorXd phd_predict(const Eigen::VectorXd& D, const GridModel& model) {
    return model.birth + model.markov.transpose() * model.p_s.cwiseProduct(D);
}

Eigen::VectorXd phd_update(const Eigen::VectorXd& D_pred, PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    Eigen::VectorXd factor = Eigen::VectorXd::Ones(n) - model.p_d;
    Z.for_each([&](int z) {
        const Eigen::VectorXd pd_lz = model.p_d.cwiseProduct(model.likelihood.row(z).transpose());
        const double denom = model.kappa(z) + pd_lz.dot(D_pred);
        if (denom > 0.0) factor += pd_lz / denom;
    });
    return factor.cwiseProduct(D_pred);
}

Eigen::VectorXd phd_single_step(const Eigen::VectorXd& D_prev, PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    Eigen::VectorXd pred(n);
    for (int x = 0; x < n; ++x) {
        double s = model.birth[x];
        for (int xp = 0; xp < n; ++xp) s += model.p_s[xp] * D_prev[xp] * model.markov(xp, x);
        pred[x] = s;
    }
    Eigen::VectorXd out(n);
    for (int x = 0; x < n; ++x) out[x] = (1.0 - model.p_d[x]) * pred[x];
    Z.for_each([&](int z) {
        // kappa(z) + B[p_D L_z] + D_prev[p_S M_{p_D L_z}]
        double denom = model.kappa(z);
        for (int x = 0; x < n; ++x) denom += model.birth[x] * model.p_d[x] * model.lik(z, x);
        for (int xp = 0; xp < n; ++xp) {
            double moved = 0.0;
            for (int x = 0; x < n; ++x) moved += model.markov(xp, x) * model.p_d[x] * model.lik(z, x);
            denom += D_prev[xp] * model.p_s[xp] * moved;
        }
        if (!(denom > 0.0)) return;
        for (int x = 0; x < n; ++x) out[x] += model.p_d[x] * model.lik(z, x) * pred[x] / denom;
    });
    return out;
}

GridSplit sud_phd_step(const Eigen::VectorXd& D_prev, PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    const Eigen::VectorXd pred = phd_predict(D_prev, model);
    GridSplit s;
    s.undetected = (Eigen::VectorXd::Ones(n) - model.p_d).cwiseProduct(pred);
    s.detected = Eigen::VectorXd::Zero(n);
    Z.for_each([&](int z) {
        const Eigen::VectorXd pd_lz = model.p_d.cwiseProduct(model.likelihood.row(z).transpose());
        const double denom = model.kappa(z) + pd_lz.dot(pred);
        if (denom > 0.0) s.detected += pd_lz.cwiseProduct(pred) / denom;
    });
    s.total = s.detected + s.undetected;
    return s;
}

GridUD dud_phd_step(const GridUD& prev, PointSet Z, const GridModel& model) {
    const int n = model.num_states();
    const Eigen::VectorXd missed = Eigen::VectorXd::Ones(n) - model.p_d;
    const Eigen::VectorXd moved_d = model.markov.transpose() * model.p_s.cwiseProduct(prev.d_part);
    const Eigen::VectorXd moved_u = model.markov.transpose() * model.p_s.cwiseProduct(prev.u_part);
    const Eigen::VectorXd merged_prev = prev.d_part + prev.u_part;
    const Eigen::VectorXd source = model.birth + model.markov.transpose() * model.p_s.cwiseProduct(merged_prev);

    GridUD out;
    out.d_part = missed.cwiseProduct(moved_d);
    Z.for_each([&](int z) {
        const Eigen::VectorXd pd_lz = model.p_d.cwiseProduct(model.likelihood.row(z).transpose());
        // D_prev[p_S M_{p_D L_z}] with M_g(x') = sum_x markov(x', x) g(x).
        const Eigen::VectorXd moved_back = model.markov * pd_lz;
        const double denom = model.kappa(z) + model.birth.dot(pd_lz) + merged_prev.dot(model.p_s.cwiseProduct(moved_back));
        if (denom > 0.0) out.d_part += pd_lz.cwiseProduct(source) / denom;
    });
    out.u_part = missed.cwiseProduct(model.birth + moved_u);
    return out;
}

GaussianMixture phd_predict(const GaussianMixture& D, const ScenarioModel& model) {
    GaussianMixture out = propagate(D, model.motion);
    out.append(model.birth);
    return out;
}

namespace {

/// Detection terms of the PHD update for a predicted mixture, in measurement-major order.
GaussianMixture detection_terms(const GaussianMixture& pred, const MeasurementList& Z, const ScenarioModel& model) {
    GaussianMixture out;
    const std::vector<double> kappa = clutter_intensities(Z, model.clutter);
    const double pd = model.measurement.p_d;
    for (std::size_t j = 0; j < Z.size(); ++j) {
        std::vector<KalmanTerm> terms;
        terms.reserve(pred.size());
        double denom = kappa[j];
        for (const auto& c : pred.components) {
            terms.push_back(kalman_update(c, Z[j], model.measurement));
            denom += c.weight * pd * terms.back().likelihood;
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            GaussianComponent u = std::move(terms[i].updated);
            u.weight = denom > 0.0 ? pred.components[i].weight * pd * terms[i].likelihood / denom : 0.0;
            out.add(std::move(u));
        }
    }
    return out;
}

GaussianMixture missed_terms(const GaussianMixture& pred, const ScenarioModel& model) {
    GaussianMixture out = pred;
    out.scale(1.0 - model.measurement.p_d);
    return out;
}

}  // namespace

GaussianMixture phd_update(const GaussianMixture& D_pred, const MeasurementList& Z, const ScenarioModel& model) {
    GaussianMixture out = missed_terms(D_pred, model);
    out.append(detection_terms(D_pred, Z, model));
    return out;
}

GaussianMixture phd_single_step(const GaussianMixture& D_prev, const MeasurementList& Z, const ScenarioModel& model) {
    const auto& F = model.motion.F;
    const double ps = model.motion.p_s;
    const double pd = model.measurement.p_d;

    // Predicted components: survivors first, then births.
    std::vector<GaussianComponent> pred;
    pred.reserve(D_prev.size() + model.birth.size());
    for (const auto& c : D_prev.components) {
        GaussianComponent p;
        p.weight = ps * c.weight;
        p.mean = F * c.mean;
        p.cov = F * c.cov * F.transpose() + model.motion.Q;
        symmetrize(p.cov);
        pred.push_back(std::move(p));
    }
    const std::size_t survivors = pred.size();
    for (const auto& b : model.birth.components) pred.push_back(b);

    GaussianMixture out;
    for (const auto& p : pred) {
        GaussianComponent m = p;
        m.weight = (1.0 - pd) * p.weight;
        out.add(std::move(m));
    }
    for (const auto& z : Z) {
        std::vector<KalmanTerm> terms;
        terms.reserve(pred.size());
        for (const auto& p : pred) terms.push_back(kalman_update(p, z, model.measurement));
        // kappa(z) + B[p_D L_z] + D_prev[p_S M_{p_D L_z}]
        double birth_part = 0.0;
        for (std::size_t i = survivors; i < pred.size(); ++i) birth_part += pred[i].weight * pd * terms[i].likelihood;
        double prior_part = 0.0;
        for (std::size_t i = 0; i < survivors; ++i) prior_part += D_prev.components[i].weight * ps * pd * terms[i].likelihood;
        const double denom = model.clutter.intensity(z) + birth_part + prior_part;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            GaussianComponent u = std::move(terms[i].updated);
            u.weight = denom > 0.0 ? pd * terms[i].likelihood * pred[i].weight / denom : 0.0;
            out.add(std::move(u));
        }
    }
    return out;
}

MixtureSplit sud_phd_step(const GaussianMixture& D_prev, const MeasurementList& Z, const ScenarioModel& model) {
    const GaussianMixture pred = phd_predict(D_prev, model);
    MixtureSplit s;
    s.undetected = missed_terms(pred, model);
    s.detected = detection_terms(pred, Z, model);
    s.total = s.undetected;
    s.total.append(s.detected);
    return s;
}

UDMixture dud_phd_step(const UDMixture& prev, const MeasurementList& Z, const ScenarioModel& model) {
    const double pd = model.measurement.p_d;
    const GaussianMixture moved_d = propagate(prev.d_part, model.motion);
    const GaussianMixture moved_u = propagate(prev.u_part, model.motion);

    // Detection terms draw on births and both propagated parts.
    GaussianMixture source = model.birth;
    source.append(moved_d);
    source.append(moved_u);

    UDMixture out;
    out.d_part = missed_terms(moved_d, model);
    const std::vector<double> kappa = clutter_intensities(Z, model.clutter);
    for (std::size_t j = 0; j < Z.size(); ++j) {
        std::vector<KalmanTerm> terms;
        terms.reserve(source.size());
        for (const auto& c : source.components) terms.push_back(kalman_update(c, Z[j], model.measurement));
        double birth_part = 0.0;
        double prior_part = 0.0;
        for (std::size_t i = 0; i < source.size(); ++i) {
            const double v = source.components[i].weight * pd * terms[i].likelihood;
            (i < model.birth.size() ? birth_part : prior_part) += v;
        }
        const double denom = kappa[j] + birth_part + prior_part;
        for (std::size_t i = 0; i < source.size(); ++i) {
            GaussianComponent u = std::move(terms[i].updated);
            u.weight = denom > 0.0 ? source.components[i].weight * pd * terms[i].likelihood / denom : 0.0;
            out.d_part.add(std::move(u));
        }
    }
    GaussianMixture undetected_source = model.birth;
    undetected_source.append(moved_u);
    out.u_part = missed_terms(undetected_source, model);
    return out;
}

UDMixture reduce(const UDMixture& m, double prune_threshold, double merge_distance, std::size_t max_components) {
    return {gm_reduce(m.d_part, prune_threshold, merge_distance, max_components),
            gm_reduce(m.u_part, prune_threshold, merge_distance, max_components)};
}

int round_half_up(double mass) {
    if (!std::isfinite(mass) || mass < 0.0) return 0;
    return static_cast<int>(std::floor(mass + 0.5));
}

namespace {

struct Candidate {
    double value;
    int index;
    int tag;
    UDState state;
};

StateEstimate select(std::vector<Candidate> pool, double mass) {
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.index != b.index) return a.index < b.index;
        return a.tag > b.tag;
    });
    StateEstimate est;
    est.count = round_half_up(mass);
    const std::size_t take = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(est.count));
    est.under_resolved = take < static_cast<std::size_t>(est.count);
    for (std::size_t i = 0; i < take; ++i) est.states.push_back(pool[i].state);
    return est;
}

/// Local maxima of a table along the point order; a plateau is one maximum at its leftmost point.
std::vector<int> local_maxima(const Eigen::VectorXd& D) {
    std::vector<int> out;
    const int n = static_cast<int>(D.size());
    int a = 0;
    while (a < n) {
        int b = a;
        while (b + 1 < n && D[b + 1] == D[a]) ++b;
        const bool left = a == 0 || D[a - 1] < D[a];
        const bool right = b == n - 1 || D[b + 1] < D[a];
        if (left && right && D[a] > 0.0) out.push_back(a);
        a = b + 1;
    }
    return out;
}

void add_grid_candidates(std::vector<Candidate>& pool, const Eigen::VectorXd& D, int tag) {
    for (int x : local_maxima(D)) {
        UDState s;
        s.point = x;
        s.tag = tag_from_int(tag);
        pool.push_back({D[x], x, tag, std::move(s)});
    }
}

void add_mixture_candidates(std::vector<Candidate>& pool, const GaussianMixture& D, int tag) {
    for (std::size_t i = 0; i < D.size(); ++i) {
        if (!(D.components[i].weight > 0.0)) continue;
        UDState s;
        s.x = D.components[i].mean;
        s.tag = tag_from_int(tag);
        pool.push_back({D.components[i].weight, static_cast<int>(i), tag, std::move(s)});
    }
}

}  // namespace

StateEstimate estimate(const Eigen::VectorXd& D) {
    std::vector<Candidate> pool;
    add_grid_candidates(pool, D, 1);
    return select(std::move(pool), D.sum());
}

StateEstimate estimate(const GaussianMixture& D) {
    std::vector<Candidate> pool;
    add_mixture_candidates(pool, D, 1);
    return select(std::move(pool), gm_mass(D));
}

StateEstimate dud_estimate(const GridUD& D) {
    std::vector<Candidate> pool;
    add_grid_candidates(pool, D.d_part, 1);
    add_grid_candidates(pool, D.u_part, 0);
    return select(std::move(pool), D.d_part.sum() + D.u_part.sum());
}

StateEstimate dud_estimate(const UDMixture& D) { return dud_estimate(D, gm_mass(D.d_part) + gm_mass(D.u_part)); }

StateEstimate dud_estimate(const UDMixture& D, double mass) {
    std::vector<Candidate> pool;
    add_mixture_candidates(pool, D.d_part, 1);
    add_mixture_candidates(pool, D.u_part, 0);
    return select(std::move(pool), mass);
}

}  // namespace udrfs
