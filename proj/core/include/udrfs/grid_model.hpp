#pragma once

#include "udrfs/point_set.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace udrfs {

/// Finite-space model: states and measurements are indices into small grids.
///
/// markov(x_prev, x) is the motion kernel (rows sum to 1), likelihood(z, x) the
/// single-target measurement density (columns sum to 1). p_s, p_d and birth are
/// per-state tables; clutter is Poisson with kappa(z) = clutter_rate * clutter_density(z).
struct GridModel {
    std::vector<std::string> state_labels;
    std::vector<std::string> meas_labels;
    Eigen::MatrixXd markov;
    Eigen::MatrixXd likelihood;
    Eigen::VectorXd p_s;
    Eigen::VectorXd p_d;
    Eigen::VectorXd birth;
    double clutter_rate = 0.0;
    Eigen::VectorXd clutter_density;

    [[nodiscard]] int num_states() const { return static_cast<int>(markov.rows()); }
    [[nodiscard]] int num_meas() const { return static_cast<int>(likelihood.rows()); }
    [[nodiscard]] double kappa(int z) const { return clutter_rate * clutter_density[z]; }
    [[nodiscard]] double p_d_at(int x) const { return p_d[x]; }
    [[nodiscard]] double missed(int x) const { return 1.0 - p_d[x]; }
    [[nodiscard]] double lik(int z, int x) const { return likelihood(z, x); }
};

/// Row-normalizes markov and column-normalizes likelihood when their sums are
/// within 1e-9 of 1, and checks ranges and shapes. Throws ConfigError naming the table.
void normalize_tables(GridModel& model);

/// A model with n_states states and n_meas measurement points, identity motion,
/// unit survival and no birth; callers fill in the remaining tables.
[[nodiscard]] GridModel make_grid_model(int n_states, int n_meas);

/// Same model with identity motion, unit survival and no birth: the setting in
/// which the aligned multitarget formulas apply.
[[nodiscard]] GridModel aligned(const GridModel& model);

/// e^{-lambda} prod_{z in Z} kappa(z) for a set Z of measurement indices.
[[nodiscard]] double clutter_set_density(const GridModel& model, PointSet Z);

/// Measurement multiset on a grid, stored as sorted point indices (repeats allowed).
using MeasurementMultiset = std::vector<int>;

/// 1 / prod_z (multiplicity of z)!: the weight a multiset receives in the
/// counting-measure set integral (1/n! times the number of orderings).
[[nodiscard]] double multiset_weight(std::span<const int> Z);

/// Visits every measurement multiset on a grid of num_meas points with at most
/// max_size elements, in lexicographic order of the sorted index list.
template <typename F>
void for_each_multiset(int num_meas, int max_size, F&& f) {
    MeasurementMultiset current;
    auto rec = [&](auto&& self, int start) -> void {
        f(static_cast<const MeasurementMultiset&>(current));
        if (static_cast<int>(current.size()) == max_size) return;
        for (int z = start; z < num_meas; ++z) {
            current.push_back(z);
            self(self, z);
            current.pop_back();
        }
    };
    rec(rec, 0);
}

/// Random grid model for property tests, drawn from a fixed seed.
[[nodiscard]] GridModel random_grid_model(int n_states, int n_meas, unsigned seed, double clutter_rate);

}  // namespace udrfs
