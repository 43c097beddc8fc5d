#include "lorentz/toys.hpp"

#include <cmath>

#include "lorentz/stats.hpp"

namespace lorentz::toys {

Vec2 baker(int m, const Vec2& y) {
    const double my = m * y.x();
    const double ip = std::floor(my);
    return Vec2(my - ip, (y.y() + ip) / m);
}

int ex1_exit(double y1, int i, int omega) {
    const int j = std::min(3, static_cast<int>(std::floor(4 * y1)));
    return mod4(i + j + omega);
}

ToyPoint ex1_step(const Vec2& y, int i, int omega) { return {baker(4, y), ex1_exit(y.x(), i, omega)}; }

int ex2_exit(double y1, int i, int omega) {
    const int j = std::min(1, static_cast<int>(std::floor(2 * y1)));
    const bool left = (j + omega) % 2 == 0;
    return mod4(i + (left ? 1 : 3));
}

ToyPoint ex2_step(const Vec2& y, int i, int omega) { return {baker(2, y), ex2_exit(y.x(), i, omega)}; }

RotatorEnv::RotatorEnv(std::array<double, 4> probs, uint64_t seed) : probs_(probs), seed_(seed) {}

int RotatorEnv::label(IVec2 cell) const {
    if (!overrides_.empty()) {
        if (auto it = overrides_.find(cell); it != overrides_.end()) return it->second;
    }
    HashStream rng(seed_, cell_stream(cell, 7));
    return 1 + rng.pick_weighted(probs_.data(), 4);
}

WalkOutcome ex3_walk(const RotatorEnv& env, WalkState start, long max_steps, std::vector<IVec2>* visited) {
    WalkOutcome out;
    WalkState s = start;
    if (visited) visited->push_back(s.cell);
    for (long k = 1; k <= max_steps; ++k) {
        const int e = ex3_exit(s.dir, env.label(s.cell));
        s.cell = s.cell + dir_vec(e);
        s.dir = e;
        if (visited) visited->push_back(s.cell);
        if (!out.first_return && s.cell == start.cell) out.first_return = k;
        if (s == start) {
            out.recurrent = true;
            out.period = k;
            out.steps_used = k;
            return out;
        }
    }
    out.steps_used = max_steps;
    return out;
}

std::vector<SweepRow> ex3_sweep(const std::vector<double>& pi_b_grid, int trials, long max_steps,
                                uint64_t seed) {
    std::vector<SweepRow> rows;
    for (size_t gi = 0; gi < pi_b_grid.size(); ++gi) {
        const double pb = pi_b_grid[gi];
        const double rest = (1.0 - pb) / 3.0;
        int recurrent = 0;
        for (int t = 0; t < trials; ++t) {
            const uint64_t env_seed = mix64(seed + 0x1000 * gi + t);
            RotatorEnv env({rest, pb, rest, rest}, env_seed);
            HashStream rng(env_seed, 0xd1ce);
            WalkState start{{0, 0}, 1 + static_cast<int>(rng.next_u64() % 4)};
            if (ex3_walk(env, start, max_steps).recurrent) ++recurrent;
        }
        const auto [lo, hi] = stats::wilson_interval(recurrent, trials);
        rows.push_back({pb, trials, static_cast<double>(recurrent) / trials, lo, hi});
    }
    return rows;
}

}  // namespace lorentz::toys
