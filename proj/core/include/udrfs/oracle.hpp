#pragma once

#include "udrfs/grid_model.hpp"
#include "udrfs/point_set.hpp"
#include "udrfs/set_calculus.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace udrfs {

/// Raised when a posterior normalizer vanishes: the observed measurement set
/// has zero probability under the model.
class MeasurementImpossible : public std::domain_error {
public:
    MeasurementImpossible() : std::domain_error("measurement impossible under model") {}
};

/// Standard multitarget measurement density f(Z|X) for target base states
/// `targets`, as a sum over measurement-to-target associations. Evaluated
/// without dividing by clutter intensities, so kappa(z) = 0 is allowed.
[[nodiscard]] double standard_meas_density(std::span<const int> targets, PointSet Z, const GridModel& model);
[[nodiscard]] double standard_meas_density(PointSet X, PointSet Z, const GridModel& model);

/// Probability that the generative model (independent detections, Poisson
/// clutter counts per grid point) produces a measurement set without coincident
/// points: the sum over all Z of standard_meas_density(Z|X) on a finite grid.
[[nodiscard]] double poisson_truncation_mass(std::span<const int> targets, const GridModel& model);

/// f*(Z|X): clutter density of Z times the sum over injections of targets into Z
/// of prod L/kappa. Zero when |X| > |Z|.
[[nodiscard]] double fstar(PointSet Z, std::span<const int> targets, const GridModel& model);

/// Clutter-free counterpart on a subset W of Z with |W| = |X|: clutter density of
/// Z times the sum over bijections of prod L/kappa. Requires kappa > 0 on W.
[[nodiscard]] double fstar_hat(PointSet W, std::span<const int> targets, PointSet Z, const GridModel& model);

/// Bayes posterior f(Z|X) prior(X) / normalizer on an untagged space.
[[nodiscard]] FiniteSetDensity bayes_posterior(const FiniteSetDensity& prior, PointSet Z, const GridModel& model);

struct PosteriorTriple {
    FiniteSetDensity total;
    FiniteSetDensity detected;
    FiniteSetDensity undetected;
};

/// Unnormalized p.g.fl.s of the static U/D posteriors for an untagged predicted density.
class SudPgfl {
public:
    SudPgfl(const FiniteSetDensity& predicted, PointSet Z, const GridModel& model);

    /// sum_X f*(Z|X) (h p_D)^X dG/dX[h p_D^c]
    [[nodiscard]] double total(std::span<const double> h) const;
    /// sum_X f*(Z|X) (h p_D)^X dG/dX[p_D^c]
    [[nodiscard]] double detected(std::span<const double> h) const;
    /// sum_X f*(Z|X) p_D^X dG/dX[h p_D^c]
    [[nodiscard]] double undetected(std::span<const double> h) const;

private:
    double evaluate(std::span<const double> detect_h, std::span<const double> missed_h) const;

    const FiniteSetDensity& predicted_;
    const GridModel& model_;
    std::vector<std::pair<PointSet, double>> fstar_terms_;
};

/// Static U/D posteriors: the full posterior, the targets detected in this scan
/// and the targets not detected in this scan, each normalized, all on the base space.
[[nodiscard]] PosteriorTriple sud_posteriors(const FiniteSetDensity& predicted, PointSet Z, const GridModel& model);

/// Unnormalized p.g.fl.s of the aligned D-U/D posteriors for a tagged prior
/// (tagged index 2x + o). The prior must charge only base-distinct sets.
class DudPgfl {
public:
    DudPgfl(const FiniteSetDensity& prior, PointSet Z, const GridModel& model);

    /// sum f*(Z|X) (h|1 p_D)^X dG/dX[h p_D^c]
    [[nodiscard]] double total(std::span<const double> h) const;
    /// sum f*(Z|X) (h|1 p_D)^X dG/dX[h^D p_D^c]
    [[nodiscard]] double detected(std::span<const double> h) const;
    /// sum f*(Z|X) p_D^X dG/dX[h^U p_D^c]
    [[nodiscard]] double undetected(std::span<const double> h) const;

private:
    double evaluate(std::span<const double> detect_h, std::span<const double> missed_h) const;

    const FiniteSetDensity& prior_;
    const GridModel& model_;
    std::vector<std::pair<PointSet, double>> fstar_terms_;
};

/// D-U/D posteriors on the tagged space, recovered from their p.g.fl.s.
/// Throws std::invalid_argument for priors that are not base-distinct.
[[nodiscard]] PosteriorTriple dud_posteriors(const FiniteSetDensity& prior, PointSet Z, const GridModel& model);

}  // namespace udrfs
