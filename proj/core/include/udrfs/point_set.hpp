#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace udrfs {

/// A subset of a small finite index space {0, ..., n-1}, stored as a bitmask.
///
/// Used both for target sets on a finite state space and for measurement sets
/// on a finite measurement grid. Spaces are limited to kMaxPoints points; the
/// exact set calculus built on top enumerates 2^n subsets anyway.
class PointSet {
public:
    static constexpr int kMaxPoints = 24;

    constexpr PointSet() = default;
    constexpr explicit PointSet(std::uint32_t bits) : bits_(bits) {}

    static PointSet of(std::initializer_list<int> points) {
        PointSet s;
        for (int p : points) s = s.with(p);
        return s;
    }

    static constexpr PointSet full(int n) {
        return PointSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }

    [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }

    [[nodiscard]] constexpr bool contains(int p) const {
        return p >= 0 && p < 32 && ((bits_ >> p) & 1U) != 0;
    }

    [[nodiscard]] PointSet with(int p) const {
        if (p < 0 || p >= kMaxPoints) throw std::out_of_range("PointSet: point index out of range");
        return PointSet(bits_ | (std::uint32_t{1} << p));
    }

    [[nodiscard]] constexpr PointSet without(int p) const {
        return PointSet(bits_ & ~(std::uint32_t{1} << p));
    }

    [[nodiscard]] constexpr bool is_subset_of(PointSet other) const {
        return (bits_ & ~other.bits_) == 0;
    }

    [[nodiscard]] constexpr bool disjoint(PointSet other) const { return (bits_ & other.bits_) == 0; }

    /// Elements in increasing index order.
    [[nodiscard]] std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
    }

    friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet(a.bits_ | b.bits_); }
    friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet(a.bits_ & b.bits_); }
    friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(PointSet a, PointSet b) = default;
    friend constexpr auto operator<=>(PointSet a, PointSet b) = default;

private:
    std::uint32_t bits_ = 0;
};

/// Calls f(sub) for every subset of s, including the empty set and s itself.
template <typename F>
void for_each_subset(PointSet s, F&& f) {
    const std::uint32_t mask = s.bits();
    std::uint32_t sub = mask;
    while (true) {
        f(PointSet(sub));
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

/// Calls f(sub) for every subset of s with at most max_size elements.
template <typename F>
void for_each_subset_up_to(PointSet s, int max_size, F&& f) {
    for_each_subset(s, [&](PointSet sub) {
        if (sub.size() <= max_size) f(sub);
    });
}

}  // namespace udrfs
