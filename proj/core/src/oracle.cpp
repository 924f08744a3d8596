#include "udrfs/oracle.hpp"

#include "udrfs/tagged.hpp"

#include <algorithm>
#include <cmath>

namespace udrfs {

namespace {

/// Sum over associations of targets to distinct points of Z (or missed), each
/// term p_D^c for a miss, p_D L for a detection and kappa for every unassigned z.
double association_sum(std::span<const int> targets, const std::vector<int>& zs, const GridModel& model,
                       bool allow_missed) {
    const std::size_t n = targets.size();
    const std::size_t m = zs.size();
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t used, double acc) -> double {
        if (acc == 0.0) return 0.0;
        if (i == n) {
            for (std::size_t j = 0; j < m; ++j) {
                if (((used >> j) & 1U) == 0) acc *= model.kappa(zs[j]);
            }
            return acc;
        }
        const int x = targets[i];
        double s = allow_missed ? self(self, i + 1, used, acc * model.missed(x)) : 0.0;
        const double pd = allow_missed ? model.p_d_at(x) : 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if ((used >> j) & 1U) continue;
            s += self(self, i + 1, used | (1U << j), acc * pd * model.lik(zs[j], x));
        }
        return s;
    };
    return rec(rec, 0, 0U, 1.0);
}

FiniteSetDensity normalize_or_throw(FiniteSetDensity f) {
    if (!(set_integral(f) > 0.0)) throw MeasurementImpossible();
    return f.normalized();
}

}  // namespace

double standard_meas_density(std::span<const int> targets, PointSet Z, const GridModel& model) {
    return std::exp(-model.clutter_rate) * association_sum(targets, Z.elements(), model, true);
}

double standard_meas_density(PointSet X, PointSet Z, const GridModel& model) {
    const std::vector<int> targets = X.elements();
    return standard_meas_density(targets, Z, model);
}

double poisson_truncation_mass(std::span<const int> targets, const GridModel& model) {
    const int m = model.num_meas();
    // Enumerate each target's outcome: missed, or a detection at a grid point.
    std::vector<int> outcome(targets.size(), -1);
    double total = 0.0;
    auto rec = [&](auto&& self, std::size_t i, double prob) -> void {
        if (prob == 0.0) return;
        if (i == targets.size()) {
            std::vector<bool> hit(static_cast<std::size_t>(m), false);
            for (int z : outcome) {
                if (z < 0) continue;
                if (hit[static_cast<std::size_t>(z)]) return;  // coincident detections
                hit[static_cast<std::size_t>(z)] = true;
            }
            double p = prob;
            for (int z = 0; z < m; ++z) {
                const double k = model.kappa(z);
                // A detected point must carry no clutter; any other point at most one clutter return.
                p *= hit[static_cast<std::size_t>(z)] ? std::exp(-k) : std::exp(-k) * (1.0 + k);
            }
            total += p;
            return;
        }
        const int x = targets[i];
        outcome[i] = -1;
        self(self, i + 1, prob * model.missed(x));
        for (int z = 0; z < m; ++z) {
            outcome[i] = z;
            self(self, i + 1, prob * model.p_d_at(x) * model.lik(z, x));
        }
    };
    rec(rec, 0, 1.0);
    return total;
}

double fstar(PointSet Z, std::span<const int> targets, const GridModel& model) {
    if (static_cast<int>(targets.size()) > Z.size()) return 0.0;
    return std::exp(-model.clutter_rate) * association_sum(targets, Z.elements(), model, false);
}

double fstar_hat(PointSet W, std::span<const int> targets, PointSet Z, const GridModel& model) {
    if (static_cast<int>(targets.size()) != W.size()) return 0.0;
    std::vector<int> ws = W.elements();
    double sum = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < targets.size(); ++i) prod *= model.lik(ws[i], targets[i]) / model.kappa(ws[i]);
        sum += prod;
    } while (std::next_permutation(ws.begin(), ws.end()));
    return clutter_set_density(model, Z) * sum;
}

FiniteSetDensity bayes_posterior(const FiniteSetDensity& prior, PointSet Z, const GridModel& model) {
    FiniteSetDensity post(prior.space());
    prior.space().for_each_subset([&](PointSet X) {
        const double p = prior(X);
        if (p != 0.0) post.set(X, standard_meas_density(X, Z, model) * p);
    });
    return normalize_or_throw(std::move(post));
}

SudPgfl::SudPgfl(const FiniteSetDensity& predicted, PointSet Z, const GridModel& model)
    : predicted_(predicted), model_(model) {
    if (predicted.space().size() != model.num_states())
        throw std::invalid_argument("SudPgfl: density space does not match the model");
    predicted.space().for_each_subset([&](PointSet X) {
        if (X.size() > Z.size()) return;
        const std::vector<int> targets = X.elements();
        const double f = fstar(Z, targets, model);
        if (f != 0.0) fstar_terms_.emplace_back(X, f);
    });
}

double SudPgfl::evaluate(std::span<const double> detect_h, std::span<const double> missed_h) const {
    const int n = model_.num_states();
    std::vector<double> detect(static_cast<std::size_t>(n));
    std::vector<double> missed(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        detect[static_cast<std::size_t>(x)] = detect_h[static_cast<std::size_t>(x)] * model_.p_d_at(x);
        missed[static_cast<std::size_t>(x)] = missed_h[static_cast<std::size_t>(x)] * model_.missed(x);
    }
    double g = 0.0;
    for (const auto& [X, f] : fstar_terms_) {
        const double dx = set_power(detect, X);
        if (dx == 0.0) continue;
        g += f * dx * functional_derivative(predicted_, X, missed);
    }
    return g;
}

double SudPgfl::total(std::span<const double> h) const { return evaluate(h, h); }

double SudPgfl::detected(std::span<const double> h) const {
    const std::vector<double> ones(h.size(), 1.0);
    return evaluate(h, ones);
}

double SudPgfl::undetected(std::span<const double> h) const {
    const std::vector<double> ones(h.size(), 1.0);
    return evaluate(ones, h);
}

PosteriorTriple sud_posteriors(const FiniteSetDensity& predicted, PointSet Z, const GridModel& model) {
    const FiniteSpace& space = predicted.space();
    if (space.cap() < std::min(Z.size(), space.size()))
        throw std::invalid_argument("sud_posteriors: cardinality cap must be at least |Z|");
    const SudPgfl pgfl(predicted, Z, model);
    const int n = model.num_states();

    FiniteSetDensity total = density_from_pgfl([&](std::span<const double> h) { return pgfl.total(h); }, space);

    std::vector<double> missed(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) missed[static_cast<std::size_t>(x)] = model.missed(x);

    FiniteSetDensity detected(space);
    space.for_each_subset([&](PointSet X) {
        if (X.size() > Z.size()) return;
        const std::vector<int> targets = X.elements();
        double pd = 1.0;
        for (int x : targets) pd *= model.p_d_at(x);
        const double f = fstar(Z, targets, model) * pd;
        if (f != 0.0) detected.set(X, f * functional_derivative(predicted, X, missed));
    });

    FiniteSetDensity undetected(space);
    space.for_each_subset([&](PointSet Y) {
        double sum = 0.0;
        for_each_subset_up_to(space.full() - Y, Z.size(), [&](PointSet X) {
            const double p = predicted(Y | X);
            if (p == 0.0) return;
            const std::vector<int> targets = X.elements();
            double pd = 1.0;
            for (int x : targets) pd *= model.p_d_at(x);
            sum += fstar(Z, targets, model) * pd * p;
        });
        if (sum != 0.0) undetected.set(Y, set_power(missed, Y) * sum);
    });

    return {normalize_or_throw(std::move(total)), normalize_or_throw(std::move(detected)),
            normalize_or_throw(std::move(undetected))};
}

DudPgfl::DudPgfl(const FiniteSetDensity& prior, PointSet Z, const GridModel& model) : prior_(prior), model_(model) {
    if (prior.space().size() != 2 * model.num_states())
        throw std::invalid_argument("DudPgfl: prior must live on the tagged space of the model");
    if (!base_distinct_support(prior))
        throw std::invalid_argument("DudPgfl: prior charges a set with two tags on one base state");
    prior.space().for_each_subset([&](PointSet X) {
        if (X.size() > Z.size() || !base_distinct(X)) return;
        const std::vector<int> bases = base_states(X);
        const double f = fstar(Z, bases, model);
        if (f != 0.0) fstar_terms_.emplace_back(X, f);
    });
}

double DudPgfl::evaluate(std::span<const double> detect_h, std::span<const double> missed_h) const {
    const std::size_t nt = detect_h.size();
    std::vector<double> detect(nt);
    std::vector<double> missed(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const int x = base_of(static_cast<int>(t));
        detect[t] = detect_h[t] * model_.p_d_at(x);
        missed[t] = missed_h[t] * model_.missed(x);
    }
    double g = 0.0;
    for (const auto& [X, f] : fstar_terms_) {
        const double dx = set_power(detect, X);
        if (dx == 0.0) continue;
        g += f * dx * functional_derivative(prior_, X, missed);
    }
    return g;
}

double DudPgfl::total(std::span<const double> h) const { return evaluate(restrict_detected(h), h); }

double DudPgfl::detected(std::span<const double> h) const {
    return evaluate(restrict_detected(h), on_detected(h));
}

double DudPgfl::undetected(std::span<const double> h) const {
    const std::vector<double> ones(h.size(), 1.0);
    return evaluate(ones, on_undetected(h));
}

PosteriorTriple dud_posteriors(const FiniteSetDensity& prior, PointSet Z, const GridModel& model) {
    const DudPgfl pgfl(prior, Z, model);
    const FiniteSpace& space = prior.space();
    FiniteSetDensity total = density_from_pgfl([&](std::span<const double> h) { return pgfl.total(h); }, space);
    FiniteSetDensity detected = density_from_pgfl([&](std::span<const double> h) { return pgfl.detected(h); }, space);
    FiniteSetDensity undetected =
        density_from_pgfl([&](std::span<const double> h) { return pgfl.undetected(h); }, space);
    return {normalize_or_throw(std::move(total)), normalize_or_throw(std::move(detected)),
            normalize_or_throw(std::move(undetected))};
}

}  // namespace udrfs
