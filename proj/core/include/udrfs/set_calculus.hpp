#pragma once

#include "udrfs/point_set.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace udrfs {

/// Finite carrier space for exact set calculus: points 0..n-1 and a cap on the
/// subset sizes that densities may charge.
class FiniteSpace {
public:
    FiniteSpace() = default;
    /// cap < 0 means "no cap" (cap = n).
    explicit FiniteSpace(int num_points, int cardinality_cap = -1);
    FiniteSpace(std::vector<std::string> labels, int cardinality_cap = -1);

    [[nodiscard]] int size() const { return size_; }
    [[nodiscard]] int cap() const { return cap_; }
    [[nodiscard]] PointSet full() const { return PointSet::full(size_); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

    /// True if X lies in the space and respects the cardinality cap.
    [[nodiscard]] bool admits(PointSet X) const { return X.is_subset_of(full()) && X.size() <= cap_; }

    template <typename F>
    void for_each_subset(F&& f) const {
        udrfs::for_each_subset_up_to(full(), cap_, f);
    }

    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
        return a.size_ == b.size_ && a.cap_ == b.cap_;
    }

private:
    int size_ = 0;
    int cap_ = 0;
    std::vector<std::string> labels_;
};

/// Pointwise function on a finite space with values in [0, 1].
class TestFunction {
public:
    TestFunction() = default;
    explicit TestFunction(std::vector<double> values);

    static TestFunction constant(int n, double value);
    static TestFunction indicator(int n, PointSet S);

    [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
    [[nodiscard]] double operator()(int x) const { return values_[static_cast<std::size_t>(x)]; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    /// h^X = prod_{x in X} h(x), with h^{empty} = 1.
    [[nodiscard]] double power(PointSet X) const;

private:
    std::vector<double> values_;
};

/// h^X for an arbitrary nonnegative pointwise function.
[[nodiscard]] double set_power(std::span<const double> h, PointSet X);

/// Multitarget density over the subsets (of size <= cap) of a finite space.
class FiniteSetDensity {
public:
    FiniteSetDensity() = default;
    explicit FiniteSetDensity(FiniteSpace space);

    [[nodiscard]] const FiniteSpace& space() const { return space_; }

    /// Value at X; zero outside the capped subset lattice.
    [[nodiscard]] double operator()(PointSet X) const;
    void set(PointSet X, double value);
    void add(PointSet X, double value);

    /// Largest cardinality carrying nonzero mass.
    [[nodiscard]] int max_cardinality() const;

    /// Same density divided by its set integral. Throws std::domain_error if the integral is 0.
    [[nodiscard]] FiniteSetDensity normalized() const;

    /// Expected number of targets at x: sum over X containing x of f(X).
    [[nodiscard]] double first_moment(int x) const;
    [[nodiscard]] std::vector<double> first_moments() const;

    [[nodiscard]] std::span<const double> raw() const { return values_; }

private:
    FiniteSpace space_;
    std::vector<double> values_;
};

/// Counting-measure set integral: the sum of f over every distinct subset.
[[nodiscard]] double set_integral(const FiniteSetDensity& f);

/// G_f[h] = sum_X h^X f(X).
[[nodiscard]] double pgfl_eval(const FiniteSetDensity& f, const TestFunction& h);

/// Belief mass Pr(Xi subset of S) = sum_{X subset of S} f(X).
[[nodiscard]] double belief_mass(const FiniteSetDensity& f, PointSet S);

/// dG_f/dX[h] via the Radon-Nikodym sum over W disjoint from X of h^W f(X u W).
/// At h = 0 this returns f(X). Throws std::invalid_argument if X is not in the space.
[[nodiscard]] double functional_derivative(const FiniteSetDensity& f, PointSet X, std::span<const double> h);
[[nodiscard]] double functional_derivative(const FiniteSetDensity& f, PointSet X, const TestFunction& h);

/// Distribution of Xi n O: 1_O^X * dG/dX[1_{O^c}].
[[nodiscard]] FiniteSetDensity censor(const FiniteSetDensity& f, PointSet O);

/// A p.g.fl. known only through its values on pointwise functions.
using Functional = std::function<double(std::span<const double>)>;

/// Functional derivative at h = 0 of a functional that is multilinear in the
/// point values: dG/dY[0] = sum_{S subset Y} (-1)^{|Y - S|} G[1_S]. Exact for
/// p.g.fl.s of set densities.
[[nodiscard]] double functional_derivative_at_zero(const Functional& G, int num_points, PointSet Y);

/// Density recovered from a multilinear p.g.fl. on every admissible subset of the space.
[[nodiscard]] FiniteSetDensity density_from_pgfl(const Functional& G, const FiniteSpace& space);

/// Largest pointwise absolute difference between two densities on the same space.
[[nodiscard]] double max_abs_difference(const FiniteSetDensity& a, const FiniteSetDensity& b);

}  // namespace udrfs
