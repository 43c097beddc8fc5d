#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lorentz/kv.hpp"
#include "lorentz/lattice.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/shapes.hpp"

namespace lorentz::ensemble {

/// Per-cell random state. For parametric families these are the shape
/// parameters; for finite laws a single index.
using Omega = std::vector<double>;

/// Law of one cell: the probability space (Omega, pi) together with the map
/// from omega to the scatterers it places inside the fundamental cell.
class CellLaw {
  public:
    virtual ~CellLaw() = default;

    virtual std::string name() const = 0;
    virtual const Lattice& lattice() const = 0;

    /// Draw the cell state from pi, keyed by (seed, cell). Pure: identical
    /// arguments give identical results in any process.
    virtual Omega sample(uint64_t seed, IVec2 cell) const = 0;

    /// Metric on Omega compatible with the dynamics: max-norm in parameter
    /// space for parametric families, discrete for finite ones.
    virtual double d_omega(const Omega& a, const Omega& b) const = 0;
    virtual double omega_diameter() const = 0;

    /// All scatterers whose closure meets the closed cell, local coordinates.
    /// This is what in-cell dynamics sees (shared fixed scatterers included).
    virtual std::vector<Shape> cell_shapes(const Omega& w) const = 0;

    /// One-cell ownership assignment: lattice translates of this list over
    /// all cells reproduce the full configuration with each shape appearing
    /// exactly once.
    virtual std::vector<Shape> tiling_shapes(const Omega& w) const = 0;

    /// Non-random shapes that may intersect the cell boundary (they carve
    /// the transparent walls out of it).
    virtual std::vector<Shape> fixed_wall_blockers() const { return {}; }

    /// The first n entries of tiling_shapes() are the random scatterers;
    /// the rest are fixed. Only random ones owe the tau_min/2 wall margin.
    virtual size_t n_random_tiling_shapes() const = 0;

    /// Blocked sub-intervals of the projection circle [0, spacing) for a
    /// corridor direction with unit perpendicular `perp`. deflated = blocked
    /// in every realization; inflated = blocked in some realization.
    virtual std::vector<std::pair<double, double>> covered_intervals(const Vec2& perp, double spacing,
                                                                     bool deflated) const = 0;

    /// Widest guaranteed (deflated) shape width; caps the corridor search.
    virtual double min_width_deflated() const = 0;

    /// Upper bound on the distance from the cell anchor to any point of any
    /// realized scatterer; used for window sizing.
    virtual double max_extent() const = 0;

    /// Closed-form curvature range over the whole parameter box, when the
    /// family admits one. nullopt means "certify by sampling".
    virtual std::optional<std::pair<double, double>> exact_curvature_bounds() const { return std::nullopt; }

    virtual double declared_tau_min() const = 0;
    virtual double tau_max_bound() const = 0;

    virtual int param_count() const = 0;
    virtual void to_kv(KvDoc& doc) const = 0;
};

using LawPtr = std::shared_ptr<const CellLaw>;

/// One disc of fixed radius with center uniform in B(0, r).
LawPtr make_disc_law(LatticeKind kind, double radius, double center_radius, double tau_min, double tau_max_bound);

/// Z^2 law: one random ellipse (center uniform in B(0, rc), semiaxes uniform
/// in boxes) plus fixed discs on the cell corners.
LawPtr make_ellipse_corner_law(double corner_radius, double center_radius, double a_lo, double a_hi,
                               double b_lo, double b_hi, double tau_min, double tau_max_bound);

LawPtr make_empty_law(LatticeKind kind);

/// Finite Omega: explicit configurations with weights. Shapes must stay
/// inside the cell (no corner sharing). Not file-serializable.
LawPtr make_finite_law(LatticeKind kind, std::vector<std::vector<Shape>> configs, std::vector<double> weights,
                       double tau_min, double tau_max_bound);

/// Fig-2-style shipped laws.
LawPtr shipped_hex_disc_law();
LawPtr shipped_square_ellipse_law();

LawPtr law_from_kv(const KvDoc& doc);

struct ValidityIssue {
    IVec2 cell;
    std::string what;
};

/// Samples n cell states and checks the tau_min/2 wall margin and pairwise
/// in-cell disjointness. Empty result means all samples were valid.
std::vector<ValidityIssue> law_validity_issues(const CellLaw& law, int n_samples, uint64_t seed);

}  // namespace lorentz::ensemble
