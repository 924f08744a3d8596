#include "udrfs/transition.hpp"

#include "udrfs/tagged.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace udrfs {

double single_target_meas_density(PointSet Z, int x, const GridModel& model) {
    if (Z.empty()) return model.missed(x);
    if (Z.size() == 1) {
        const int z = Z.elements().front();
        return model.p_d_at(x) * model.lik(z, x);
    }
    return 0.0;
}

double cjtf(PointSet Z, int x, int x_prev, const GridModel& model) {
    return single_target_meas_density(Z, x, model) * model.markov(x_prev, x);
}

double cud_jtf(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model) {
    return o == o_prev ? cjtf(Z, x, x_prev, model) : 0.0;
}

double nud_jtf(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model) {
    const double d_o1 = o == 1 ? 1.0 : 0.0;
    const double sign = o == 0 ? 1.0 : -1.0;
    const double d_prev0 = o_prev == 0 ? 1.0 : 0.0;
    const double d_empty = Z.empty() ? 1.0 : 0.0;
    return (d_o1 + sign * d_prev0 * d_empty) * cjtf(Z, x, x_prev, model);
}

double nud_jtf_five_case(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model) {
    if (Z.size() >= 2) return 0.0;
    // A detected target never reverts.
    if (o_prev == 1 && o == 0) return 0.0;
    if (!Z.empty()) {
        // An undetected target that produced a measurement is detected now.
        if (o == 0) return 0.0;
        return cjtf(Z, x, x_prev, model);
    }
    // Missed detection: the tag is kept.
    if (o == o_prev) return cjtf(Z, x, x_prev, model);
    return 0.0;
}

double bernoulli_meas_density(std::span<const int> Z, int x, const GridModel& model) {
    double clutter_only = 1.0;
    for (int z : Z) clutter_only *= model.kappa(z);
    double detected = 0.0;
    for (std::size_t j = 0; j < Z.size(); ++j) {
        double term = model.lik(Z[j], x);
        for (std::size_t i = 0; i < Z.size(); ++i) {
            if (i != j) term *= model.kappa(Z[i]);
        }
        detected += term;
    }
    return std::exp(-model.clutter_rate) * (model.missed(x) * clutter_only + model.p_d_at(x) * detected);
}

double nud_jtf_bernoulli(std::span<const int> Z, int x, int o, int x_prev, int o_prev, const GridModel& model) {
    if (o_prev == 1 && o == 0) return 0.0;
    const double f = bernoulli_meas_density(Z, x, model) * model.markov(x_prev, x);
    if (o_prev == 1) return f;
    const bool empty = Z.empty();
    if (o == 0) return empty ? f : 0.0;
    return empty ? 0.0 : f;
}

namespace {

void check_limits(std::size_t n_targets, std::size_t n_meas, const MultitargetLimits& limits) {
    if (static_cast<int>(n_targets) > limits.max_targets)
        throw std::invalid_argument("multitarget JTF: too many targets for exact enumeration");
    if (static_cast<int>(n_meas) > limits.max_measurements)
        throw std::invalid_argument("multitarget JTF: too many measurements for exact enumeration");
}

/// Kernel factors for the previous target prev moving to new under a missed
/// detection (state unchanged) and under a detection (tag becomes 1, base kept).
struct AlignedFactors {
    double missed;
    double detected;  // coefficient of L_z(x') in the detection term
};

AlignedFactors aligned_factors(int new_t, int prev_t, const GridModel& model) {
    const int x = base_of(prev_t);
    AlignedFactors f{0.0, 0.0};
    if (new_t == prev_t) f.missed = model.missed(x);
    if (tag_of(new_t) == 1 && base_of(new_t) == x) f.detected = model.p_d_at(x);
    return f;
}

}  // namespace

double nud_jtf_multitarget(std::span<const int> Z, PointSet X, PointSet X_prev, const GridModel& model,
                           MultitargetLimits limits) {
    const std::vector<int> prev = X_prev.elements();
    std::vector<int> next = X.elements();
    check_limits(std::max(prev.size(), next.size()), Z.size(), limits);
    if (prev.size() != next.size()) return 0.0;
    const std::size_t n = prev.size();
    const std::size_t m = Z.size();

    double total = 0.0;
    std::sort(next.begin(), next.end());
    do {
        // next[i] is the image of prev[i] under this bijection.
        std::vector<AlignedFactors> fac(n);
        bool possible = true;
        for (std::size_t i = 0; i < n; ++i) {
            fac[i] = aligned_factors(next[i], prev[i], model);
            if (fac[i].missed == 0.0 && fac[i].detected == 0.0) possible = false;
        }
        if (!possible) continue;
        // Sum over associations: target i missed, or assigned to a distinct index of Z.
        auto rec = [&](auto&& self, std::size_t i, std::uint32_t used, double acc) -> double {
            if (acc == 0.0) return 0.0;
            if (i == n) {
                double clutter = acc;
                for (std::size_t j = 0; j < m; ++j) {
                    if (((used >> j) & 1U) == 0) clutter *= model.kappa(Z[j]);
                }
                return clutter;
            }
            double s = self(self, i + 1, used, acc * fac[i].missed);
            if (fac[i].detected != 0.0) {
                const int x = base_of(prev[i]);
                for (std::size_t j = 0; j < m; ++j) {
                    if ((used >> j) & 1U) continue;
                    s += self(self, i + 1, used | (1U << j), acc * fac[i].detected * model.lik(Z[j], x));
                }
            }
            return s;
        };
        total += rec(rec, 0, 0U, 1.0);
    } while (std::next_permutation(next.begin(), next.end()));
    return std::exp(-model.clutter_rate) * total;
}

double nud_partial_pgfl(std::span<const double> g, PointSet X, PointSet X_prev, const GridModel& model,
                        MultitargetLimits limits) {
    if (static_cast<int>(g.size()) != model.num_meas())
        throw std::invalid_argument("nud_partial_pgfl: test function size mismatch");
    const std::vector<int> prev = X_prev.elements();
    std::vector<int> next = X.elements();
    check_limits(std::max(prev.size(), next.size()), 0, limits);
    if (prev.size() != next.size()) return 0.0;

    double clutter_exponent = 0.0;
    for (int z = 0; z < model.num_meas(); ++z) clutter_exponent += model.kappa(z) * (g[static_cast<std::size_t>(z)] - 1.0);

    double sum = 0.0;
    std::sort(next.begin(), next.end());
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            const AlignedFactors f = aligned_factors(next[i], prev[i], model);
            const int x = base_of(prev[i]);
            double lg = 0.0;
            for (int z = 0; z < model.num_meas(); ++z) lg += g[static_cast<std::size_t>(z)] * model.lik(z, x);
            prod *= f.missed + f.detected * lg;
        }
        sum += prod;
    } while (std::next_permutation(next.begin(), next.end()));
    return std::exp(clutter_exponent) * sum;
}

int measurement_truncation(double rate, int extra) {
    // Accumulate the Poisson pmf until the remaining tail is negligible.
    double pmf = std::exp(-rate);
    double cdf = pmf;
    int n = 0;
    while (1.0 - cdf > 1e-16 && n < 200) {
        ++n;
        pmf *= rate / n;
        cdf += pmf;
        if (pmf < 1e-18 && n > rate) break;
    }
    return n + extra;
}

}  // namespace udrfs
