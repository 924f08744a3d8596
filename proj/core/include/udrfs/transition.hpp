#pragma once

#include "udrfs/grid_model.hpp"
#include "udrfs/point_set.hpp"

#include <functional>
#include <span>

namespace udrfs {

/// Joint transition function variants.
enum class JtfKind { conventional, conventional_ud, novel_ud, bernoulli_ud, multitarget_aligned_ud };

/// Single-target measurement density without clutter: 1 - p_D(x) for Z empty,
/// p_D(x) L_z(x) for Z = {z}, and 0 when Z has two or more points.
[[nodiscard]] double single_target_meas_density(PointSet Z, int x, const GridModel& model);

/// Conventional JTF: single_target_meas_density(Z, x) * markov(x_prev, x).
[[nodiscard]] double cjtf(PointSet Z, int x, int x_prev, const GridModel& model);

/// Conventional U/D JTF: tags propagate unchanged, cjtf * [o == o_prev].
[[nodiscard]] double cud_jtf(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model);

/// Novel U/D JTF in compact form: (d_{o,1} + (-1)^o d_{o_prev,0} d_{|Z|,0}) * cjtf.
[[nodiscard]] double nud_jtf(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model);

/// Novel U/D JTF evaluated from its case-by-case definition.
[[nodiscard]] double nud_jtf_five_case(PointSet Z, int x, int o, int x_prev, int o_prev, const GridModel& model);

/// Any single-target tagged JTF with the nud_jtf signature; lets checks run against a substitute.
using SingleTargetJtf = std::function<double(PointSet, int, int, int, int, const GridModel&)>;

/// Full single-target measurement density with Poisson clutter for a measurement
/// multiset Z: e^{-lambda} [p_D^c(x) kappa^Z + p_D(x) sum_j L_{z_j}(x) kappa^{Z - z_j}].
[[nodiscard]] double bernoulli_meas_density(std::span<const int> Z, int x, const GridModel& model);

/// Bernoulli U/D JTF: 0 for D->U, f for D->D, d_{|Z|,0} f for U->U and
/// (1 - d_{|Z|,0}) f for U->D, with f = bernoulli_meas_density * markov.
[[nodiscard]] double nud_jtf_bernoulli(std::span<const int> Z, int x, int o, int x_prev, int o_prev,
                                       const GridModel& model);

/// Enumeration bounds for the multitarget JTF. Larger inputs are rejected.
struct MultitargetLimits {
    int max_targets = 4;
    int max_measurements = 4;
};

/// Aligned multitarget U/D JTF (no motion, birth or death) between tagged sets,
/// for a measurement multiset Z. Sums over bijections between previous and new
/// targets and over measurement-to-target associations. Throws
/// std::invalid_argument beyond the limits.
[[nodiscard]] double nud_jtf_multitarget(std::span<const int> Z, PointSet X, PointSet X_prev, const GridModel& model,
                                         MultitargetLimits limits = {});

/// Partial p.g.fl. of the aligned multitarget JTF in its measurement argument,
/// at the measurement test function g.
[[nodiscard]] double nud_partial_pgfl(std::span<const double> g, PointSet X, PointSet X_prev, const GridModel& model,
                                      MultitargetLimits limits = {});

/// Smallest multiset size N such that a Poisson(rate) count exceeds N - extra with
/// probability below 1e-16. Used to truncate Z-integrals on finite grids.
[[nodiscard]] int measurement_truncation(double rate, int extra);

}  // namespace udrfs
