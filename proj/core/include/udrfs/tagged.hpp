#pragma once

#include "udrfs/point_set.hpp"
#include "udrfs/set_calculus.hpp"

#include <vector>

namespace udrfs {

/// Tagged finite spaces: base point x with tag o lives at index 2x + o, so the
/// detected region is the odd indices and the undetected region the even ones.
[[nodiscard]] constexpr int tagged_index(int base, int tag) { return 2 * base + tag; }
[[nodiscard]] constexpr int base_of(int tagged) { return tagged / 2; }
[[nodiscard]] constexpr int tag_of(int tagged) { return tagged % 2; }

/// All (x, 1) points of a tagged space over num_base base points.
[[nodiscard]] PointSet detected_region(int num_base);
/// All (x, 0) points.
[[nodiscard]] PointSet undetected_region(int num_base);

/// Lifts a base-space set to the tagged space with a fixed tag.
[[nodiscard]] PointSet lift(PointSet base_set, int tag);

/// Base states of a tagged set, in increasing tagged-index order (repeats kept).
[[nodiscard]] std::vector<int> base_states(PointSet tagged_set);

/// True if no two points of the set share a base state.
[[nodiscard]] bool base_distinct(PointSet tagged_set);

/// True if every set charged by f is base-distinct.
[[nodiscard]] bool base_distinct_support(const FiniteSetDensity& f);

/// Test-function transforms on a tagged space.
/// restrict_detected: h|1(x, o) = h(x, 1).
[[nodiscard]] std::vector<double> restrict_detected(std::span<const double> h);
/// restrict_undetected: h|0(x, o) = h(x, 0).
[[nodiscard]] std::vector<double> restrict_undetected(std::span<const double> h);
/// D-transform: 1 on undetected points, h on detected points.
[[nodiscard]] std::vector<double> on_detected(std::span<const double> h);
/// U-transform: 1 on detected points, h on undetected points.
[[nodiscard]] std::vector<double> on_undetected(std::span<const double> h);

/// Untagged density of a tagged one: sums over tags for base-distinct sets.
/// Throws std::invalid_argument if f charges a set that is not base-distinct.
[[nodiscard]] FiniteSetDensity forget_tags(const FiniteSetDensity& tagged);

}  // namespace udrfs
