#include "lorentz/toy_exact.hpp"

#include <sstream>
#include <stdexcept>

#include "lorentz/toys.hpp"

namespace lorentz::toys {

namespace {

// One refinement level: split every rectangle into its m digit children and
// move them by the exit table. `exit_of(dir, omega, digit)` is the level-set
// table of the example.
void refine(std::vector<DyadicRect>& rects, int m, const std::function<int(IVec2)>& omega_of,
            const std::function<int(int, int, int)>& exit_of) {
    std::vector<DyadicRect> next;
    next.reserve(rects.size() * m);
    for (const DyadicRect& rect : rects) {
        const int omega = omega_of(rect.cell);
        for (int j = 0; j < m; ++j) {
            DyadicRect child = rect;
            child.p = rect.p * m + j;
            child.level = rect.level + 1;
            child.weight = rect.weight / m;
            const int e = exit_of(rect.dir, omega, j);
            child.dir = e;
            child.cell = rect.cell + dir_vec(e);
            if (child.cell == IVec2{0, 0}) child.returned = true;
            next.push_back(child);
        }
    }
    rects = std::move(next);
}

ExactWalk run_exact(int n, int m, const std::function<int(IVec2)>& omega_of,
                    const std::function<int(int, int, int)>& exit_of) {
    if (n < 0 || n > 12) throw std::invalid_argument("exact enumeration supports 0 <= n <= 12");
    ExactWalk walk;
    walk.m = m;
    walk.n = n;
    std::vector<DyadicRect> rects;
    for (int i = 1; i <= 4; ++i) rects.push_back({0, 0, i, {0, 0}, false, Rat(1, 4)});
    walk.return_by.push_back(Rat(0));
    for (int k = 0; k < n; ++k) {
        refine(rects, m, omega_of, exit_of);
        Rat returned(0);
        for (const DyadicRect& r : rects)
            if (r.returned) returned += r.weight;
        walk.return_by.push_back(returned);
    }
    for (const DyadicRect& r : rects) {
        walk.distribution[r.cell] += r.weight;
        walk.dir_dist[{r.cell, r.dir}] += r.weight;
    }
    walk.leaves = std::move(rects);
    return walk;
}

}  // namespace

ExactWalk ex1_exact(int n, const std::function<int(IVec2)>& omega_of) {
    return run_exact(n, 4, omega_of, [](int dir, int omega, int j) { return mod4(dir + j + omega); });
}

ExactWalk ex2_exact(int n, const std::function<int(IVec2)>& omega_of) {
    return run_exact(n, 2, omega_of, [](int dir, int omega, int j) {
        const bool left = (j + omega) % 2 == 0;
        return mod4(dir + (left ? 1 : 3));
    });
}

std::map<IVec2, Rat> srw_distribution(int n) {
    std::map<IVec2, Rat> dist;
    dist[{0, 0}] = Rat(1);
    for (int k = 0; k < n; ++k) {
        std::map<IVec2, Rat> next;
        for (const auto& [pos, w] : dist)
            for (int i = 1; i <= 4; ++i) next[pos + dir_vec(i)] += w / 4;
        dist = std::move(next);
    }
    return dist;
}

std::vector<Rat> srw_return_by(int n) {
    std::map<std::pair<IVec2, bool>, Rat> state;
    state[{{0, 0}, false}] = Rat(1);
    std::vector<Rat> out = {Rat(0)};
    for (int k = 0; k < n; ++k) {
        std::map<std::pair<IVec2, bool>, Rat> next;
        for (const auto& [key, w] : state) {
            const auto& [pos, returned] = key;
            for (int i = 1; i <= 4; ++i) {
                const IVec2 q = pos + dir_vec(i);
                next[{q, returned || q == IVec2{0, 0}}] += w / 4;
            }
        }
        state = std::move(next);
        Rat returned(0);
        for (const auto& [key, w] : state)
            if (key.second) returned += w;
        out.push_back(returned);
    }
    return out;
}

std::map<int, Rat> rw1d_distribution(int m) {
    std::map<int, Rat> dist;
    dist[0] = Rat(1);
    for (int k = 0; k < m; ++k) {
        std::map<int, Rat> next;
        for (const auto& [pos, w] : dist) {
            next[pos + 1] += w / 2;
            next[pos - 1] += w / 2;
        }
        dist = std::move(next);
    }
    return dist;
}

std::string distribution_to_json(const std::map<IVec2, Rat>& dist) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [pos, w] : dist) {
        if (!first) out << ",";
        first = false;
        out << "\"" << pos.x << "," << pos.y << "\":\"" << w.numerator() << "/" << w.denominator() << "\"";
    }
    out << "}";
    return out.str();
}

}  // namespace lorentz::toys
