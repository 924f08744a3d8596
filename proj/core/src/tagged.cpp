#include "udrfs/tagged.hpp"

#include <stdexcept>

namespace udrfs {

PointSet detected_region(int num_base) {
    PointSet s;
    for (int x = 0; x < num_base; ++x) s = s.with(tagged_index(x, 1));
    return s;
}

PointSet undetected_region(int num_base) {
    PointSet s;
    for (int x = 0; x < num_base; ++x) s = s.with(tagged_index(x, 0));
    return s;
}

PointSet lift(PointSet base_set, int tag) {
    PointSet s;
    base_set.for_each([&](int x) { s = s.with(tagged_index(x, tag)); });
    return s;
}

std::vector<int> base_states(PointSet tagged_set) {
    std::vector<int> out;
    tagged_set.for_each([&](int t) { out.push_back(base_of(t)); });
    return out;
}

bool base_distinct(PointSet tagged_set) {
    const std::uint32_t b = tagged_set.bits();
    // (x,0) at bit 2x and (x,1) at bit 2x+1: both set means a shared base.
    return (b & (b >> 1) & 0x55555555U) == 0;
}

bool base_distinct_support(const FiniteSetDensity& f) {
    bool ok = true;
    f.space().for_each_subset([&](PointSet X) {
        if (f(X) != 0.0 && !base_distinct(X)) ok = false;
    });
    return ok;
}

namespace {

std::vector<double> transform(std::span<const double> h, auto&& rule) {
    if (h.size() % 2 != 0) throw std::invalid_argument("tagged test function must have an even number of points");
    std::vector<double> out(h.size());
    for (std::size_t t = 0; t < h.size(); ++t) out[t] = rule(static_cast<int>(t));
    return out;
}

}  // namespace

std::vector<double> restrict_detected(std::span<const double> h) {
    return transform(h, [&](int t) { return h[static_cast<std::size_t>(tagged_index(base_of(t), 1))]; });
}

std::vector<double> restrict_undetected(std::span<const double> h) {
    return transform(h, [&](int t) { return h[static_cast<std::size_t>(tagged_index(base_of(t), 0))]; });
}

std::vector<double> on_detected(std::span<const double> h) {
    return transform(h, [&](int t) { return tag_of(t) == 1 ? h[static_cast<std::size_t>(t)] : 1.0; });
}

std::vector<double> on_undetected(std::span<const double> h) {
    return transform(h, [&](int t) { return tag_of(t) == 0 ? h[static_cast<std::size_t>(t)] : 1.0; });
}

FiniteSetDensity forget_tags(const FiniteSetDensity& tagged) {
    const FiniteSpace& ts = tagged.space();
    if (ts.size() % 2 != 0) throw std::invalid_argument("forget_tags: not a tagged space");
    const int n = ts.size() / 2;
    FiniteSetDensity out(FiniteSpace(n, std::min(ts.cap(), n)));
    ts.for_each_subset([&](PointSet X) {
        const double v = tagged(X);
        if (v == 0.0) return;
        if (!base_distinct(X)) throw std::invalid_argument("forget_tags: density charges a set with a repeated base state");
        PointSet base;
        X.for_each([&](int t) { base = base.with(base_of(t)); });
        out.add(base, v);
    });
    return out;
}

}  // namespace udrfs
