#include "udrfs/set_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udrfs {

FiniteSpace::FiniteSpace(int num_points, int cardinality_cap) : size_(num_points) {
    if (num_points < 0 || num_points > PointSet::kMaxPoints)
        throw std::invalid_argument("FiniteSpace: number of points must be in [0, 24]");
    cap_ = cardinality_cap < 0 ? num_points : cardinality_cap;
    if (cap_ > num_points) throw std::invalid_argument("FiniteSpace: cardinality cap exceeds space size");
    labels_.reserve(static_cast<std::size_t>(num_points));
    for (int i = 0; i < num_points; ++i) labels_.push_back(std::to_string(i));
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, int cardinality_cap)
    : FiniteSpace(static_cast<int>(labels.size()), cardinality_cap) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("FiniteSpace: point labels must be distinct");
    labels_ = std::move(labels);
}

TestFunction::TestFunction(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("TestFunction: values must lie in [0, 1]");
    }
}

TestFunction TestFunction::constant(int n, double value) {
    return TestFunction(std::vector<double>(static_cast<std::size_t>(n), value));
}

TestFunction TestFunction::indicator(int n, PointSet S) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    S.for_each([&](int x) {
        if (x < n) v[static_cast<std::size_t>(x)] = 1.0;
    });
    return TestFunction(std::move(v));
}

double TestFunction::power(PointSet X) const { return set_power(values_, X); }

double set_power(std::span<const double> h, PointSet X) {
    double p = 1.0;
    X.for_each([&](int x) { p *= h[static_cast<std::size_t>(x)]; });
    return p;
}

FiniteSetDensity::FiniteSetDensity(FiniteSpace space)
    : space_(std::move(space)), values_(std::size_t{1} << space_.size(), 0.0) {}

double FiniteSetDensity::operator()(PointSet X) const {
    if (!space_.admits(X)) return 0.0;
    return values_[X.bits()];
}

void FiniteSetDensity::set(PointSet X, double value) {
    if (!space_.admits(X)) throw std::invalid_argument("FiniteSetDensity: subset outside the capped space");
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("FiniteSetDensity: values must be finite and nonnegative");
    values_[X.bits()] = value;
}

void FiniteSetDensity::add(PointSet X, double value) { set(X, (*this)(X) + value); }

int FiniteSetDensity::max_cardinality() const {
    int m = 0;
    space_.for_each_subset([&](PointSet X) {
        if (values_[X.bits()] != 0.0) m = std::max(m, X.size());
    });
    return m;
}

FiniteSetDensity FiniteSetDensity::normalized() const {
    const double total = set_integral(*this);
    if (!(total > 0.0)) throw std::domain_error("FiniteSetDensity: cannot normalize a zero density");
    FiniteSetDensity out(space_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] / total;
    return out;
}

double FiniteSetDensity::first_moment(int x) const {
    double m = 0.0;
    space_.for_each_subset([&](PointSet X) {
        if (X.contains(x)) m += values_[X.bits()];
    });
    return m;
}

std::vector<double> FiniteSetDensity::first_moments() const {
    std::vector<double> m(static_cast<std::size_t>(space_.size()), 0.0);
    space_.for_each_subset([&](PointSet X) {
        const double v = values_[X.bits()];
        X.for_each([&](int x) { m[static_cast<std::size_t>(x)] += v; });
    });
    return m;
}

double set_integral(const FiniteSetDensity& f) {
    double s = 0.0;
    f.space().for_each_subset([&](PointSet X) { s += f(X); });
    return s;
}

double pgfl_eval(const FiniteSetDensity& f, const TestFunction& h) {
    if (h.size() != f.space().size()) throw std::invalid_argument("pgfl_eval: test function size mismatch");
    double g = 0.0;
    f.space().for_each_subset([&](PointSet X) { g += h.power(X) * f(X); });
    return g;
}

double belief_mass(const FiniteSetDensity& f, PointSet S) {
    double b = 0.0;
    for_each_subset_up_to(S & f.space().full(), f.space().cap(), [&](PointSet X) { b += f(X); });
    return b;
}

double functional_derivative(const FiniteSetDensity& f, PointSet X, std::span<const double> h) {
    const FiniteSpace& space = f.space();
    if (static_cast<int>(h.size()) != space.size())
        throw std::invalid_argument("functional_derivative: test function size mismatch");
    if (!X.is_subset_of(space.full()))
        throw std::invalid_argument("functional_derivative: X contains points outside the space");
    if (X.size() > space.cap()) return 0.0;
    const PointSet rest = space.full() - X;
    double d = 0.0;
    for_each_subset_up_to(rest, space.cap() - X.size(), [&](PointSet W) {
        const double v = f(X | W);
        if (v != 0.0) d += set_power(h, W) * v;
    });
    return d;
}

double functional_derivative(const FiniteSetDensity& f, PointSet X, const TestFunction& h) {
    return functional_derivative(f, X, h.values());
}

FiniteSetDensity censor(const FiniteSetDensity& f, PointSet O) {
    const FiniteSpace& space = f.space();
    const TestFunction outside = TestFunction::indicator(space.size(), space.full() - O);
    FiniteSetDensity out(space);
    space.for_each_subset([&](PointSet X) {
        if (X.is_subset_of(O)) out.set(X, functional_derivative(f, X, outside));
    });
    return out;
}

double functional_derivative_at_zero(const Functional& G, int num_points, PointSet Y) {
    std::vector<double> h(static_cast<std::size_t>(num_points), 0.0);
    double d = 0.0;
    for_each_subset(Y, [&](PointSet S) {
        std::fill(h.begin(), h.end(), 0.0);
        S.for_each([&](int x) { h[static_cast<std::size_t>(x)] = 1.0; });
        const double sign = ((Y.size() - S.size()) % 2 == 0) ? 1.0 : -1.0;
        d += sign * G(h);
    });
    return d;
}

FiniteSetDensity density_from_pgfl(const Functional& G, const FiniteSpace& space) {
    FiniteSetDensity out(space);
    space.for_each_subset([&](PointSet Y) {
        const double v = functional_derivative_at_zero(G, space.size(), Y);
        // Inclusion-exclusion leaves rounding-level negatives where the true value is 0.
        out.set(Y, std::max(v, 0.0));
    });
    return out;
}

double max_abs_difference(const FiniteSetDensity& a, const FiniteSetDensity& b) {
    if (a.space().size() != b.space().size())
        throw std::invalid_argument("max_abs_difference: densities live on different spaces");
    double m = 0.0;
    for_each_subset(a.space().full(), [&](PointSet X) { m = std::max(m, std::abs(a(X) - b(X))); });
    return m;
}

}  // namespace udrfs
