#include "lorentz/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "lorentz/errors.hpp"
#include "lorentz/full_plane.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/skew.hpp"
#include "lorentz/toys.hpp"

namespace lorentz::analytics {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LORENTZ_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

IVec2 partial_sum(const TraceEnsemble& ens, const std::vector<int8_t>& trace, long upto) {
    IVec2 s{0, 0};
    for (long k = 0; k < upto && k < static_cast<long>(trace.size()); ++k)
        s = s + ens.dirvecs[trace[k]];
    return s;
}

}  // namespace

TraceEnsemble collect(const TraceSource& source, long n, int trials, uint64_t seed,
                      double max_singular_fraction, int n_threads) {
    TraceEnsemble ens;
    ens.system = source.name;
    ens.seed = seed;
    ens.n = n;
    ens.dirvecs = source.dirvecs;
    ens.traces.resize(trials);
    ens.truncated.assign(trials, 0);

    const int workers = std::min(resolve_threads(n_threads), std::max(trials, 1));
    std::atomic<int> next{0};
    auto work = [&]() {
        while (true) {
            const int t = next.fetch_add(1);
            if (t >= trials) return;
            bool truncated = false;
            ens.traces[t] = source.run(mix64(seed ^ mix64(t + 1)), n, truncated);
            ens.truncated[t] = truncated ? 1 : 0;
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (uint8_t f : ens.truncated) ens.truncated_count += f;
    ens.singular_fraction = trials ? static_cast<double>(ens.truncated_count) / trials : 0.0;
    if (ens.singular_fraction > max_singular_fraction)
        throw ExcessiveSingularityError("singular-trace fraction " + std::to_string(ens.singular_fraction) +
                                        " exceeds " + std::to_string(max_singular_fraction));
    return ens;
}

ReturnStats return_statistics(const TraceEnsemble& ens, const std::vector<long>& horizons) {
    ReturnStats out;
    out.horizons = horizons;
    std::vector<long> first_returns;
    for (size_t t = 0; t < ens.traces.size(); ++t) {
        if (ens.truncated[t]) continue;
        IVec2 s{0, 0};
        long first = -1;
        const auto& trace = ens.traces[t];
        for (size_t k = 0; k < trace.size(); ++k) {
            s = s + ens.dirvecs[trace[k]];
            if (s.is_zero()) {
                first = static_cast<long>(k) + 1;
                break;
            }
        }
        first_returns.push_back(first);
        if (first > 0) ++out.first_return_histogram[first];
    }
    out.trials = static_cast<long>(first_returns.size());
    for (long N : horizons) {
        long hits = 0;
        for (long f : first_returns)
            if (f > 0 && f <= N) ++hits;
        const auto [lo, hi] = stats::wilson_interval(hits, out.trials);
        out.fraction.push_back(out.trials ? static_cast<double>(hits) / out.trials : 0.0);
        out.wilson_lo.push_back(lo);
        out.wilson_hi.push_back(hi);
    }
    return out;
}

ScaledDistribution scaled_distribution(const TraceEnsemble& ens, long n, const std::vector<double>& rho_grid,
                                       int d) {
    ScaledDistribution out;
    out.n = n;
    out.d = d;
    out.rho = rho_grid;
    const double scale = std::pow(static_cast<double>(n), 1.0 / d);
    for (size_t t = 0; t < ens.traces.size(); ++t) {
        if (ens.truncated[t]) continue;
        const IVec2 s = partial_sum(ens, ens.traces[t], n);
        out.samples.emplace_back(s.x / scale, s.y / scale);
    }
    const double m = static_cast<double>(out.samples.size());
    for (double rho : rho_grid) {
        long inside = 0;
        for (const Vec2& v : out.samples)
            if (v.norm() < rho) ++inside;
        const double p = m > 0 ? inside / m : 0.0;
        out.mass.push_back(p);
        out.ci_half.push_back(m > 0 ? 1.959963984540054 * std::sqrt(p * (1 - p) / m) : 1.0);
    }
    return out;
}

SchmidtVerdict schmidt_check(const TraceEnsemble& ens, const std::vector<long>& times,
                             const std::vector<double>& rho_grid, std::optional<double> c_override) {
    SchmidtVerdict verdict;
    verdict.times = times;
    verdict.rho = rho_grid;
    verdict.caveat = "empirical screen only: assumes ergodicity of (Sigma, F, nu) and checks the "
                     "small-ball bound up to Monte Carlo error";

    if (c_override) {
        verdict.c = *c_override;
    } else {
        // half the Gaussian small-ball coefficient pi * f(0) of the fitted
        // per-step covariance, from the largest requested time
        const long n_fit = *std::max_element(times.begin(), times.end());
        const CltDiagnostics clt = clt_diagnostics(ens, n_fit);
        const Mat2 per_step = clt.cov / static_cast<double>(n_fit);
        const double det = per_step.determinant();
        if (det <= 0) throw ConfigError("degenerate covariance; cannot fit a small-ball coefficient");
        const double f0 = 1.0 / (2.0 * kPi * std::sqrt(det));
        verdict.c = 0.5 * kPi * f0;
    }

    verdict.pass = true;
    verdict.margin = std::numeric_limits<double>::max();
    for (long nk : times) {
        const ScaledDistribution dist = scaled_distribution(ens, nk, rho_grid);
        verdict.mass.push_back(dist.mass);
        verdict.ci.push_back(dist.ci_half);
        for (size_t i = 0; i < rho_grid.size(); ++i) {
            const double m = dist.mass[i] - verdict.c * rho_grid[i] * rho_grid[i];
            if (m < verdict.margin) {
                verdict.margin = m;
                verdict.margin_ci = dist.ci_half[i];
            }
            if (m < -dist.ci_half[i]) verdict.pass = false;
        }
    }
    return verdict;
}

CltDiagnostics clt_diagnostics(const TraceEnsemble& ens, long n) {
    CltDiagnostics out;
    std::vector<double> xs, ys;
    for (size_t t = 0; t < ens.traces.size(); ++t) {
        if (ens.truncated[t]) continue;
        const IVec2 s = partial_sum(ens, ens.traces[t], n);
        xs.push_back(s.x);
        ys.push_back(s.y);
    }
    const long m = static_cast<long>(xs.size());
    out.trials = m;
    if (m < 2) return out;
    for (long i = 0; i < m; ++i) out.mean += Vec2(xs[i], ys[i]);
    out.mean /= static_cast<double>(m);
    for (long i = 0; i < m; ++i) {
        const Vec2 d = Vec2(xs[i], ys[i]) - out.mean;
        out.cov += d * d.transpose();
    }
    out.cov /= static_cast<double>(m - 1);
    out.mean_se = Vec2(std::sqrt(out.cov(0, 0) / m), std::sqrt(out.cov(1, 1) / m));
    out.ks_x = stats::ks_distance_normal(xs, out.mean.x(), std::sqrt(out.cov(0, 0)));
    out.ks_y = stats::ks_distance_normal(ys, out.mean.y(), std::sqrt(out.cov(1, 1)));
    out.ks_threshold = 1.36 / std::sqrt(static_cast<double>(m));
    return out;
}

MsdCurve msd_curve(const TraceEnsemble& ens) {
    MsdCurve out;
    const long n = ens.n;
    const long grid = std::min<long>(n, 200);
    std::vector<long> ns;
    for (long i = 1; i <= grid; ++i) ns.push_back(std::max<long>(1, (n * i) / grid));
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::vector<double> acc(ns.size(), 0.0);
    long used = 0;
    for (size_t t = 0; t < ens.traces.size(); ++t) {
        if (ens.truncated[t]) continue;
        ++used;
        IVec2 s{0, 0};
        size_t g = 0;
        const auto& trace = ens.traces[t];
        for (long k = 1; k <= n; ++k) {
            s = s + ens.dirvecs[trace[k - 1]];
            if (g < ns.size() && ns[g] == k) {
                acc[g] += static_cast<double>(s.x) * s.x + static_cast<double>(s.y) * s.y;
                ++g;
            }
        }
    }
    std::vector<double> xs;
    for (size_t i = 0; i < ns.size(); ++i) {
        out.n.push_back(ns[i]);
        out.msd.push_back(used ? acc[i] / used : 0.0);
        xs.push_back(static_cast<double>(ns[i]));
    }
    const auto fit = stats::fit_line(xs, out.msd);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.r2 = fit.r2;
    out.slope_ci = 1.959963984540054 * fit.slope_se;
    return out;
}

// ------------------------------------------------------------- systems --

namespace {

std::vector<IVec2> toy_dirvecs() { return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}; }

}  // namespace

TraceSource ex1_source(std::array<double, 3> label_probs) {
    TraceSource src;
    src.name = "ex1";
    src.dirvecs = toy_dirvecs();
    src.run = [label_probs](uint64_t trial_seed, long n, bool&) {
        HashStream rng(trial_seed, 0xa11);
        const uint64_t env_seed = rng.next_u64();
        int dir = 1 + static_cast<int>(rng.next_u64() % 4);
        IVec2 cell{0, 0};
        std::vector<int8_t> dirs;
        dirs.reserve(n);
        for (long k = 0; k < n; ++k) {
            HashStream cell_rng(env_seed, cell_stream(cell, 3));
            const int omega = 1 + cell_rng.pick_weighted(label_probs.data(), 3);
            const int digit = static_cast<int>(rng.next_u64() & 3);
            dir = toys::mod4(dir + digit + omega);
            dirs.push_back(static_cast<int8_t>(dir - 1));
            cell = cell + toys::dir_vec(dir);
        }
        return dirs;
    };
    return src;
}

TraceSource ex2_source(std::array<double, 2> label_probs) {
    TraceSource src;
    src.name = "ex2";
    src.dirvecs = toy_dirvecs();
    src.run = [label_probs](uint64_t trial_seed, long n, bool&) {
        HashStream rng(trial_seed, 0xa22);
        const uint64_t env_seed = rng.next_u64();
        int dir = 1 + static_cast<int>(rng.next_u64() % 4);
        IVec2 cell{0, 0};
        std::vector<int8_t> dirs;
        dirs.reserve(n);
        for (long k = 0; k < n; ++k) {
            HashStream cell_rng(env_seed, cell_stream(cell, 4));
            const int omega = 1 + cell_rng.pick_weighted(label_probs.data(), 2);
            const int digit = static_cast<int>(rng.next_u64() & 1);
            const bool left = (digit + omega) % 2 == 0;
            dir = toys::mod4(dir + (left ? 1 : 3));
            dirs.push_back(static_cast<int8_t>(dir - 1));
            cell = cell + toys::dir_vec(dir);
        }
        return dirs;
    };
    return src;
}

TraceSource ex3_source(std::array<double, 4> label_probs) {
    TraceSource src;
    src.name = "ex3";
    src.dirvecs = toy_dirvecs();
    src.run = [label_probs](uint64_t trial_seed, long n, bool&) {
        HashStream rng(trial_seed, 0xa33);
        const toys::RotatorEnv env(label_probs, rng.next_u64());
        int dir = 1 + static_cast<int>(rng.next_u64() % 4);
        IVec2 cell{0, 0};
        std::vector<int8_t> dirs;
        dirs.reserve(n);
        for (long k = 0; k < n; ++k) {
            dir = toys::ex3_exit(dir, env.label(cell));
            dirs.push_back(static_cast<int8_t>(dir - 1));
            cell = cell + toys::dir_vec(dir);
        }
        return dirs;
    };
    return src;
}

TraceSource ballistic_source() {
    TraceSource src = ex3_source({0, 0, 0, 1});
    src.name = "ballistic";
    return src;
}

TraceSource skew_source(ensemble::LawPtr law) {
    TraceSource src;
    src.name = "skew:" + law->name();
    for (const IVec2& g : law->lattice().neighbors()) src.dirvecs.push_back(g);
    auto cs = std::make_shared<skew::CrossSection>(skew::CrossSection::build(*law));
    src.run = [law, cs](uint64_t trial_seed, long n, bool& truncated) {
        HashStream rng(trial_seed, 0xb11);
        auto env = ensemble::random_env(law, rng.next_u64());
        const auto start = skew::sample_mu1(*cs, rng);
        auto state = skew::make_skew_state(*cs, start, std::move(env));
        std::vector<int8_t> dirs;
        dirs.reserve(n);
        for (long k = 0; k < n; ++k) {
            try {
                auto [next, ev] = skew::skew_step(state, *cs);
                state = std::move(next);
                dirs.push_back(static_cast<int8_t>(law->lattice().direction_index(ev.direction)));
            } catch (const TangencyError&) {
                truncated = true;
                break;
            } catch (const CornerCrossingError&) {
                truncated = true;
                break;
            }
        }
        return dirs;
    };
    return src;
}

}  // namespace lorentz::analytics
