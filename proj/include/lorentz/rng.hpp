#pragma once

#include <cstdint>

#include "lorentz/types.hpp"

namespace lorentz {

/// splitmix64 finalizer. Bijective on 64-bit words.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (seed, stream). Streams with distinct
/// keys are independent by construction, which is what makes lazily realized
/// i.i.d. fields and trial-indexed Monte Carlo reproducible: the value at a
/// key never depends on evaluation order.
class HashStream {
  public:
    HashStream(uint64_t seed, uint64_t stream) : key_(mix64(seed ^ mix64(stream ^ 0x5bf03635ull))) {}

    uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Index in [0, n) with probability weights[i] (weights need not be normalized).
    int pick_weighted(const double* weights, int n) {
        double total = 0;
        for (int i = 0; i < n; ++i) total += weights[i];
        double u = next_unit() * total;
        for (int i = 0; i < n; ++i) {
            u -= weights[i];
            if (u < 0) return i;
        }
        return n - 1;
    }

    /// Uniform in the closed disc of given radius centered at the origin.
    Vec2 in_disc(double radius) {
        const double rho = radius * std::sqrt(next_unit());
        const double theta = 2.0 * kPi * next_unit();
        return Vec2(rho * std::cos(theta), rho * std::sin(theta));
    }

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// Stream id for a lattice cell (plus a small per-purpose tag).
inline uint64_t cell_stream(IVec2 g, uint32_t tag = 0) {
    const uint64_t ux = static_cast<uint32_t>(g.x);
    const uint64_t uy = static_cast<uint32_t>(g.y);
    return mix64((ux << 32) | uy) ^ (uint64_t(tag) << 1);
}

}  // namespace lorentz
