#include "udrfs/brute_force.hpp"

#include "udrfs/oracle.hpp"
#include "udrfs/tagged.hpp"

#include <cmath>
#include <stdexcept>

namespace udrfs {

namespace {

/// Calls visit(detected_mask, weight) for every association of the targets to Z:
/// detected_mask marks targets assigned a measurement (bit i for targets[i]).
template <typename F>
void for_each_association(const std::vector<int>& targets, PointSet Z, const GridModel& model, F&& visit) {
    const std::vector<int> zs = Z.elements();
    const std::size_t n = targets.size();
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t used, std::uint32_t detected, double w) -> void {
        if (w == 0.0) return;
        if (i == n) {
            for (std::size_t j = 0; j < zs.size(); ++j) {
                if (((used >> j) & 1U) == 0) w *= model.kappa(zs[j]);
            }
            visit(detected, std::exp(-model.clutter_rate) * w);
            return;
        }
        const int x = targets[i];
        self(self, i + 1, used, detected, w * (1.0 - model.p_d[x]));
        for (std::size_t j = 0; j < zs.size(); ++j) {
            if ((used >> j) & 1U) continue;
            self(self, i + 1, used | (1U << j), detected | (1U << i), w * model.p_d[x] * model.likelihood(zs[j], x));
        }
    };
    rec(rec, 0, 0U, 0U, 1.0);
}

FiniteSetDensity normalize_or_throw(FiniteSetDensity f) {
    if (!(set_integral(f) > 0.0)) throw MeasurementImpossible();
    return f.normalized();
}

}  // namespace

FiniteSetDensity detection_joint_oracle(const FiniteSetDensity& predicted, PointSet Z, const GridModel& model) {
    const int n = predicted.space().size();
    FiniteSetDensity joint(FiniteSpace(2 * n, predicted.space().cap()));
    predicted.space().for_each_subset([&](PointSet X) {
        const double p = predicted(X);
        if (p == 0.0) return;
        const std::vector<int> targets = X.elements();
        for_each_association(targets, Z, model, [&](std::uint32_t detected, double w) {
            PointSet tagged;
            for (std::size_t i = 0; i < targets.size(); ++i) {
                tagged = tagged.with(tagged_index(targets[i], static_cast<int>((detected >> i) & 1U)));
            }
            joint.add(tagged, p * w);
        });
    });
    return normalize_or_throw(std::move(joint));
}

FiniteSetDensity region_to_base(const FiniteSetDensity& tagged, int tag) {
    const FiniteSpace& ts = tagged.space();
    const int n = ts.size() / 2;
    const PointSet region = tag == 1 ? detected_region(n) : undetected_region(n);
    FiniteSetDensity out(FiniteSpace(n, std::min(ts.cap(), n)));
    ts.for_each_subset([&](PointSet X) {
        const double v = tagged(X);
        if (v == 0.0) return;
        if (!X.is_subset_of(region)) throw std::invalid_argument("region_to_base: density charges points outside the region");
        PointSet base;
        X.for_each([&](int t) { base = base.with(base_of(t)); });
        out.set(base, v);
    });
    return out;
}

FiniteSetDensity dud_bayes_oracle(const FiniteSetDensity& tagged_prior, PointSet Z, const GridModel& model) {
    FiniteSetDensity post(tagged_prior.space());
    tagged_prior.space().for_each_subset([&](PointSet X) {
        const double p = tagged_prior(X);
        if (p == 0.0) return;
        if (!base_distinct(X)) throw std::invalid_argument("dud_bayes_oracle: prior set repeats a base state");
        const std::vector<int> points = X.elements();
        const std::vector<int> targets = base_states(X);
        for_each_association(targets, Z, model, [&](std::uint32_t detected, double w) {
            PointSet next;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const bool hit = ((detected >> i) & 1U) != 0;
                next = next.with(hit ? tagged_index(targets[i], 1) : points[i]);
            }
            post.add(next, p * w);
        });
    });
    return normalize_or_throw(std::move(post));
}

std::vector<double> dud_trajectory_oracle(std::span<const double> tagged_prior, const std::vector<PointSet>& scans,
                                          const GridModel& model) {
    const int n = model.num_states();
    if (static_cast<int>(tagged_prior.size()) != 2 * n)
        throw std::invalid_argument("dud_trajectory_oracle: prior must have 2 entries per state");
    for (PointSet Z : scans) {
        if (Z.size() > 1) throw std::invalid_argument("dud_trajectory_oracle: at most one measurement per scan");
    }
    std::vector<double> post(static_cast<std::size_t>(2 * n), 0.0);
    const std::size_t steps = scans.size();
    std::vector<int> path(steps + 1);
    auto rec = [&](auto&& self, std::size_t k, double w, bool ever_detected) -> void {
        if (w == 0.0) return;
        if (k == steps) {
            post[static_cast<std::size_t>(tagged_index(path[steps], ever_detected ? 1 : 0))] += w;
            return;
        }
        for (int x = 0; x < n; ++x) {
            path[k + 1] = x;
            double step = model.markov(path[k], x);
            const PointSet Z = scans[k];
            if (Z.empty()) {
                step *= 1.0 - model.p_d[x];
                self(self, k + 1, w * step, ever_detected);
            } else {
                step *= model.p_d[x] * model.likelihood(Z.elements().front(), x);
                self(self, k + 1, w * step, true);
            }
        }
    };
    for (int x0 = 0; x0 < n; ++x0) {
        path[0] = x0;
        for (int o0 = 0; o0 < 2; ++o0) rec(rec, 0, tagged_prior[static_cast<std::size_t>(tagged_index(x0, o0))], o0 == 1);
    }
    double total = 0.0;
    for (double v : post) total += v;
    if (!(total > 0.0)) throw MeasurementImpossible();
    for (double& v : post) v /= total;
    return post;
}

std::vector<double> predicted_first_moment_oracle(const FiniteSetDensity& prior, const GridModel& model) {
    const int n = model.num_states();
    for (int x = 0; x < n; ++x) {
        if (model.birth[x] > 1.0) throw std::invalid_argument("predicted_first_moment_oracle: birth probability above 1");
    }
    std::vector<double> moment(static_cast<std::size_t>(n), 0.0);
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    prior.space().for_each_subset([&](PointSet X) {
        const double p = prior(X);
        if (p == 0.0) return;
        const std::vector<int> targets = X.elements();
        // Fate of each prior target (-1 = died), then the birth pattern.
        auto fate = [&](auto&& self, std::size_t i, double w) -> void {
            if (w == 0.0) return;
            if (i == targets.size()) {
                for (int b = 0; b < (1 << n); ++b) {
                    double wb = w;
                    for (int x = 0; x < n; ++x) wb *= ((b >> x) & 1) ? model.birth[x] : 1.0 - model.birth[x];
                    if (wb == 0.0) continue;
                    for (int x = 0; x < n; ++x) {
                        const int c = counts[static_cast<std::size_t>(x)] + ((b >> x) & 1);
                        moment[static_cast<std::size_t>(x)] += wb * c;
                    }
                }
                return;
            }
            const int xp = targets[i];
            self(self, i + 1, w * (1.0 - model.p_s[xp]));
            for (int x = 0; x < n; ++x) {
                ++counts[static_cast<std::size_t>(x)];
                self(self, i + 1, w * model.p_s[xp] * model.markov(xp, x));
                --counts[static_cast<std::size_t>(x)];
            }
        };
        fate(fate, 0, p);
    });
    return moment;
}

FiniteSetDensity predict_single_target_oracle(const FiniteSetDensity& prior, const GridModel& model) {
    if (model.birth.cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("predict_single_target_oracle: model must be birth-free");
    if (prior.max_cardinality() > 1) throw std::invalid_argument("predict_single_target_oracle: prior has two or more targets");
    const int n = prior.space().size();
    FiniteSetDensity out(FiniteSpace(n, 1));
    double empty = prior(PointSet{});
    for (int xp = 0; xp < n; ++xp) {
        const double p = prior(PointSet::of({xp}));
        if (p == 0.0) continue;
        empty += p * (1.0 - model.p_s[xp]);
        for (int x = 0; x < n; ++x) out.add(PointSet::of({x}), p * model.p_s[xp] * model.markov(xp, x));
    }
    out.add(PointSet{}, empty);
    return out;
}

}  // namespace udrfs
