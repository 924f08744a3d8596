#pragma once

#include "udrfs/grid_model.hpp"
#include "udrfs/point_set.hpp"
#include "udrfs/set_calculus.hpp"

#include <span>
#include <vector>

namespace udrfs {

/// Exhaustive-enumeration references. Each one follows the generative story of
/// the model directly (who was detected, where each target went) rather than
/// any closed-form recursion, so the filters and formulas can be checked against it.

/// Joint posterior over "detected in this scan": for every predicted set X and
/// every measurement-to-target association, targets assigned a measurement get
/// tag 1 and the rest tag 0. Lives on the tagged space of the model; normalized.
[[nodiscard]] FiniteSetDensity detection_joint_oracle(const FiniteSetDensity& predicted, PointSet Z,
                                                      const GridModel& model);

/// Base-space density of a tagged density whose support lies in the region of
/// the given tag. Throws std::invalid_argument if it charges any other set.
[[nodiscard]] FiniteSetDensity region_to_base(const FiniteSetDensity& tagged, int tag);

/// Aligned D-U/D Bayes update: each prior target is missed (state kept) or
/// assigned a distinct measurement (tag becomes 1). Normalized.
[[nodiscard]] FiniteSetDensity dud_bayes_oracle(const FiniteSetDensity& tagged_prior, PointSet Z,
                                                const GridModel& model);

/// Single-target, clutter-free tagged posterior after the given scans, found by
/// summing over every state path. A path's final tag is 1 if it started tagged
/// or was detected at any scan. Index 2x + o of the result.
[[nodiscard]] std::vector<double> dud_trajectory_oracle(std::span<const double> tagged_prior,
                                                        const std::vector<PointSet>& scans, const GridModel& model);

/// Expected target count at each point after one prediction step, found by
/// enumerating survival, motion and independent per-point Bernoulli births
/// (probability birth(x), which must not exceed 1).
[[nodiscard]] std::vector<double> predicted_first_moment_oracle(const FiniteSetDensity& prior, const GridModel& model);

/// Prediction of a density with at most one target under a birth-free model.
[[nodiscard]] FiniteSetDensity predict_single_target_oracle(const FiniteSetDensity& prior, const GridModel& model);

}  // namespace udrfs
