#include "lorentz/percolation.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>

namespace lorentz::toys {

namespace {

struct WindingGrid {
    int radius, side, wspan;
    std::vector<int8_t> match;  // label match per cell, origin excluded

    int cell_idx(int x, int y) const { return (x + radius) * side + (y + radius); }
    bool in_box(int x, int y) const { return std::abs(x) <= radius && std::abs(y) <= radius; }
    // lifted vertex index of (cell, w), w in [-wspan, wspan]
    size_t lift(int x, int y, int w) const {
        return (static_cast<size_t>(cell_idx(x, y)) * (2 * wspan + 1)) + (w + wspan);
    }
};

// Crossing bookkeeping: the cut is the near-vertical ray from the origin
// between cell columns 0 and 1 at rows >= 1. Horizontal steps across it
// change the winding count.
int winding_delta(int x0, int y0, int x1, int y1) {
    if (y0 != y1 || y0 < 1) return 0;
    if (x0 == 0 && x1 == 1) return 1;
    if (x0 == 1 && x1 == 0) return -1;
    return 0;
}

}  // namespace

LoopResult blocking_loop_check(const RotatorEnv& env, const std::vector<int>& labels, int radius) {
    const int side = 2 * radius + 1;
    std::vector<int8_t> cell_labels(static_cast<size_t>(side) * side);
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            cell_labels[static_cast<size_t>(x + radius) * side + (y + radius)] =
                static_cast<int8_t>(env.label({x, y}));

    WindingGrid grid{radius, side, radius + 1, {}};
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};

    for (int lab : labels) {
        grid.match.assign(static_cast<size_t>(side) * side, 0);
        for (int x = -radius; x <= radius; ++x)
            for (int y = -radius; y <= radius; ++y)
                grid.match[grid.cell_idx(x, y)] =
                    (cell_labels[grid.cell_idx(x, y)] == lab && !(x == 0 && y == 0)) ? 1 : 0;

        for (int k = 1; k <= radius; ++k) {
            if (!grid.match[grid.cell_idx(0, k)] || !grid.match[grid.cell_idx(1, k)]) continue;

            // shortest path (1,k,w=0) -> (0,k,w=0) avoiding the closing edge
            std::vector<int32_t> parent(static_cast<size_t>(side) * side * (2 * grid.wspan + 1), -1);
            const size_t start = grid.lift(1, k, 0), goal = grid.lift(0, k, 0);
            parent[start] = static_cast<int32_t>(start);
            std::deque<std::array<int, 3>> queue = {{1, k, 0}};
            bool reached = false;
            while (!queue.empty() && !reached) {
                const auto [x, y, w] = queue.front();
                queue.pop_front();
                for (int d = 0; d < 4; ++d) {
                    const int nx = x + dx[d], ny = y + dy[d];
                    if (!grid.in_box(nx, ny) || !grid.match[grid.cell_idx(nx, ny)]) continue;
                    if (y == k && ny == k && ((x == 0 && nx == 1) || (x == 1 && nx == 0)))
                        continue;  // the closing edge itself
                    const int nw = w + winding_delta(x, y, nx, ny);
                    if (std::abs(nw) > grid.wspan) continue;
                    const size_t v = grid.lift(nx, ny, nw);
                    if (parent[v] >= 0) continue;
                    parent[v] = static_cast<int32_t>(grid.lift(x, y, w));
                    if (v == goal) {
                        reached = true;
                        break;
                    }
                    queue.push_back({nx, ny, nw});
                }
            }
            if (!reached) continue;

            LoopResult res;
            res.found = true;
            res.label = lab;
            size_t v = goal;
            while (true) {
                const int cell = static_cast<int>(v / (2 * grid.wspan + 1));
                res.loop.push_back({cell / side - radius, cell % side - radius});
                if (v == start) break;
                v = static_cast<size_t>(parent[v]);
            }
            return res;
        }
    }
    return {};
}

bool contained_in_loop(const std::vector<IVec2>& loop, const std::vector<IVec2>& cells) {
    if (loop.empty()) return false;
    int lo_x = std::numeric_limits<int>::max(), hi_x = std::numeric_limits<int>::min();
    int lo_y = lo_x, hi_y = hi_x;
    std::set<IVec2> loop_set(loop.begin(), loop.end());
    for (const IVec2& c : loop) {
        lo_x = std::min(lo_x, c.x);
        hi_x = std::max(hi_x, c.x);
        lo_y = std::min(lo_y, c.y);
        hi_y = std::max(hi_y, c.y);
    }
    --lo_x, --lo_y, ++hi_x, ++hi_y;
    const int w = hi_x - lo_x + 1, h = hi_y - lo_y + 1;
    std::vector<uint8_t> outside(static_cast<size_t>(w) * h, 0);
    auto idx = [&](int x, int y) { return static_cast<size_t>(x - lo_x) * h + (y - lo_y); };
    std::deque<IVec2> queue;
    auto push = [&](IVec2 c) {
        if (c.x < lo_x || c.x > hi_x || c.y < lo_y || c.y > hi_y) return;
        if (outside[idx(c.x, c.y)] || loop_set.count(c)) return;
        outside[idx(c.x, c.y)] = 1;
        queue.push_back(c);
    };
    for (int x = lo_x; x <= hi_x; ++x) {
        push({x, lo_y});
        push({x, hi_y});
    }
    for (int y = lo_y; y <= hi_y; ++y) {
        push({lo_x, y});
        push({hi_x, y});
    }
    while (!queue.empty()) {
        const IVec2 c = queue.front();
        queue.pop_front();
        push({c.x + 1, c.y});
        push({c.x - 1, c.y});
        push({c.x, c.y + 1});
        push({c.x, c.y - 1});
    }
    for (const IVec2& c : cells) {
        if (loop_set.count(c)) continue;
        if (c.x < lo_x || c.x > hi_x || c.y < lo_y || c.y > hi_y) return false;  // beyond the loop's box
        if (outside[idx(c.x, c.y)]) return false;
    }
    return true;
}

}  // namespace lorentz::toys
