#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "lorentz/cell_law.hpp"
#include "lorentz/lattice.hpp"

namespace lorentz::ensemble {

/// Finite block of cell states whose lattice translates tile Gamma.
struct PeriodicPattern {
    int px = 1, py = 1;
    std::vector<Omega> values;  // row-major, values[iy * px + ix]

    const Omega& at(IVec2 g) const {
        const int ix = ((g.x % px) + px) % px;
        const int iy = ((g.y % py) + py) % py;
        return values.at(static_cast<size_t>(iy) * px + ix);
    }
};

struct PlacedShape {
    Shape shape;   // translated into the query frame
    IVec2 cell;    // owning cell, query frame
    int index;     // tiling index within the cell (additions get indices past the tiling)
};

/// A lattice-indexed scatterer configuration: lazily realized i.i.d. cell
/// states (or a periodic pattern) plus a finite modification. Immutable;
/// shifting is O(1) re-indexing of a shared core.
class Environment {
  public:
    const CellLaw& law() const { return *core_->law; }
    const LawPtr& law_ptr() const { return core_->law; }
    const Lattice& lattice() const { return core_->law->lattice(); }
    uint64_t seed() const { return core_->seed; }
    IVec2 shift_offset() const { return offset_; }
    bool is_periodic() const { return core_->periodic.has_value(); }

    Omega cell_state(IVec2 g) const;
    Environment shifted(IVec2 eta) const;

    /// Scatterers of every cell whose interior meets the region inflated by
    /// one lattice spacing, in query-frame coordinates.
    std::vector<PlacedShape> scatterers_near(const AABox& region) const;

    bool has_modifications() const { return !core_->removed.empty() || !core_->added.empty(); }

    friend Environment random_env(LawPtr law, uint64_t seed);
    friend Environment periodic_env(LawPtr law, PeriodicPattern pattern);
    friend Environment finite_modification(const Environment& env,
                                           const std::vector<std::pair<IVec2, int>>& removals,
                                           const std::vector<Shape>& additions);
    friend std::string env_to_string(const Environment& env);
    friend Environment env_from_string(const std::string& text);

  private:
    Environment() = default;

    struct Core {
        LawPtr law;
        uint64_t seed = 0;
        std::optional<PeriodicPattern> periodic;
        std::map<IVec2, Omega> overrides;            // core frame
        std::set<std::pair<IVec2, int>> removed;     // core frame, tiling index
        std::vector<Shape> added;                    // core frame plane coordinates
    };

    std::shared_ptr<const Core> core_;
    IVec2 offset_{0, 0};
};

Environment random_env(LawPtr law, uint64_t seed);
Environment periodic_env(LawPtr law, PeriodicPattern pattern);

/// Removals are (cell, tiling index) in the query frame; additions are query
/// frame shapes. Throws OverlapError if an addition intersects or touches a
/// retained scatterer.
Environment finite_modification(const Environment& env, const std::vector<std::pair<IVec2, int>>& removals,
                                const std::vector<Shape>& additions);

struct DclgResult {
    double value;       // partial sum over |gamma| <= radius
    double tail_bound;  // rigorous bound on the omitted tail
};

/// d(lambda, lambda') = sum over Gamma of 2^-|gamma| d_Omega, truncated at
/// plane radius `radius`. Both environments must share the same law object.
DclgResult d_clg(const Environment& a, const Environment& b, double radius);

std::string env_to_string(const Environment& env);
Environment env_from_string(const std::string& text);

}  // namespace lorentz::ensemble
