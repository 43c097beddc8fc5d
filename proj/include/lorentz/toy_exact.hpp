#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "lorentz/types.hpp"

namespace lorentz::toys {

using Rat = boost::rational<long long>;

/// Node of the exact refinement: the set of initial points whose first
/// `level` base-m digits of y1 are fixed. A rectangle of base m^-level and
/// full height, carrying its direction, current cell and exact weight.
struct DyadicRect {
    long long p = 0;  // base interval [p / m^level, (p+1) / m^level)
    int level = 0;
    int dir = 0;
    IVec2 cell{0, 0};
    bool returned = false;
    Rat weight{0, 1};
};

struct ExactWalk {
    int m = 0;  // refinement base (4 for Example 1, 2 for Example 2)
    long long n = 0;
    std::vector<DyadicRect> leaves;                 // the full n-step partition
    std::map<IVec2, Rat> distribution;              // law of S_n
    std::vector<Rat> return_by;                     // P(S_k = 0 for some 1 <= k <= N), N = 0..n
    std::map<std::pair<IVec2, int>, Rat> dir_dist;  // law of (S_n, incoming direction)
};

/// Exact n-step law of Example 1 in the frozen environment `omega_of`
/// (labels 1..3), by base-4 rectangle refinement. Initial law: direction
/// uniform on {E,N,W,S}, y uniform.
ExactWalk ex1_exact(int n, const std::function<int(IVec2)>& omega_of);

/// Exact n-step law of Example 2 (labels 1..2), base-2 refinement.
ExactWalk ex2_exact(int n, const std::function<int(IVec2)>& omega_of);

/// n-step standard random walk: exact distribution and return probabilities.
std::map<IVec2, Rat> srw_distribution(int n);
std::vector<Rat> srw_return_by(int n);

/// 1D simple walk at m steps: index a -> P(W_m = a), keys in {-m..m}.
std::map<int, Rat> rw1d_distribution(int m);

/// JSON object mapping "x,y" to the rational probability as a string.
std::string distribution_to_json(const std::map<IVec2, Rat>& dist);

}  // namespace lorentz::toys
