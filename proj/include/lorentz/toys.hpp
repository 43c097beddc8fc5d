#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "lorentz/rng.hpp"
#include "lorentz/types.hpp"

namespace lorentz::toys {

/// Directions 1..4 = East, North, West, South.
inline constexpr int kEast = 1, kNorth = 2, kWest = 3, kSouth = 4;

/// Rotator labels: Left, Backward, Right, Forward (= omega values 1..4).
inline constexpr int kLeft = 1, kBack = 2, kRight = 3, kForward = 4;

inline IVec2 dir_vec(int i) {
    switch (i) {
        case kEast: return {1, 0};
        case kNorth: return {0, 1};
        case kWest: return {-1, 0};
        default: return {0, -1};
    }
}

/// Congruent integer in {1..4}.
inline int mod4(int v) { return ((v - 1) % 4 + 4) % 4 + 1; }

/// m-baker's map (y1, y2) -> ({m y1}, (y2 + [m y1]) / m).
Vec2 baker(int m, const Vec2& y);

struct ToyPoint {
    Vec2 y;
    int dir;
};

/// Example 1 exit: e = g_{(i + j + omega) mod 4} with j the first base-4
/// digit of y1. For each (i, omega) the four quarter columns hit the four
/// directions bijectively.
int ex1_exit(double y1, int i, int omega);
ToyPoint ex1_step(const Vec2& y, int i, int omega);

/// Example 2 exit: turn Left when ([2 y1] + omega) is even, else Right.
/// Left(i) = i+1 mod 4, Right(i) = i+3 mod 4. Never straight or backward.
int ex2_exit(double y1, int i, int omega);
ToyPoint ex2_step(const Vec2& y, int i, int omega);

/// Example 3 exit: e(i, omega) = i + omega mod 4.
inline int ex3_exit(int i, int omega) { return mod4(i + omega); }

/// Frozen i.i.d. label field on Z^2 with finite overrides.
class RotatorEnv {
  public:
    RotatorEnv(std::array<double, 4> probs, uint64_t seed);

    int label(IVec2 cell) const;
    void set_label(IVec2 cell, int lab) { overrides_[cell] = lab; }
    const std::array<double, 4>& probs() const { return probs_; }

  private:
    std::array<double, 4> probs_;  // indexed by label-1: L, B, R, F
    uint64_t seed_;
    std::map<IVec2, int> overrides_;
};

struct WalkState {
    IVec2 cell{0, 0};
    int dir = kEast;
    friend bool operator==(const WalkState&, const WalkState&) = default;
};

struct WalkOutcome {
    bool recurrent = false;                 // Undecided when false and steps exhausted
    long period = 0;                        // steps to the first repeat of the start state
    std::optional<long> first_return;       // first k >= 1 with S_k = 0
    long steps_used = 0;
};

/// Deterministic walk in the frozen environment. The step map is invertible,
/// so an orbit repeats a state iff it returns to the start state; recurrence
/// equals periodicity.
WalkOutcome ex3_walk(const RotatorEnv& env, WalkState start, long max_steps,
                     std::vector<IVec2>* visited = nullptr);

struct SweepRow {
    double pi_b;
    int trials;
    double recurrent_fraction;
    double wilson_lo, wilson_hi;
};

/// Monte Carlo recurrence fraction over (environment, start) pairs for a
/// grid of pi_B values; the remaining mass splits evenly over L, R, F.
std::vector<SweepRow> ex3_sweep(const std::vector<double>& pi_b_grid, int trials, long max_steps,
                                uint64_t seed);

}  // namespace lorentz::toys
