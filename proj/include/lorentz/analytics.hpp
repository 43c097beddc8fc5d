#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/environment.hpp"
#include "lorentz/stats.hpp"
#include "lorentz/types.hpp"

namespace lorentz::analytics {

/// Compact trace storage: one direction index per step (into dirvecs).
/// Truncated (singular) traces are kept but flagged and excluded from
/// statistics.
struct TraceEnsemble {
    std::string system;
    uint64_t seed = 0;
    long n = 0;
    std::vector<IVec2> dirvecs;
    std::vector<std::vector<int8_t>> traces;
    std::vector<uint8_t> truncated;
    int truncated_count = 0;
    double singular_fraction = 0;

    long count_valid() const { return static_cast<long>(traces.size()) - truncated_count; }
};

/// A system that can be sampled: produces one trace of direction indices
/// from a trial seed. Deterministic in (trial_seed, n).
struct TraceSource {
    std::string name;
    std::vector<IVec2> dirvecs;
    std::function<std::vector<int8_t>(uint64_t trial_seed, long n, bool& truncated)> run;
};

/// Reproducible ensemble of `trials` traces of length n. Throws
/// ExcessiveSingularityError when the truncation fraction exceeds the given
/// bound. n_threads = 0 picks LORENTZ_LAB_THREADS or the hardware count.
TraceEnsemble collect(const TraceSource& source, long n, int trials, uint64_t seed,
                      double max_singular_fraction = 0.01, int n_threads = 0);

struct ReturnStats {
    std::vector<long> horizons;
    std::vector<double> fraction, wilson_lo, wilson_hi;
    std::map<long, long> first_return_histogram;
    long trials = 0;
};

/// Fraction of traces with S_k = 0 for some 1 <= k <= N, per horizon N.
ReturnStats return_statistics(const TraceEnsemble& ens, const std::vector<long>& horizons);

struct ScaledDistribution {
    long n = 0;
    int d = 2;
    std::vector<Vec2> samples;  // S_n / n^(1/d)
    std::vector<double> rho, mass, ci_half;
};

ScaledDistribution scaled_distribution(const TraceEnsemble& ens, long n, const std::vector<double>& rho_grid,
                                       int d = 2);

struct SchmidtVerdict {
    std::vector<long> times;
    std::vector<double> rho;
    double c = 0;
    bool pass = false;
    double margin = 0;     // min over the grid of p_hat - c rho^2
    double margin_ci = 0;  // Monte Carlo CI half-width at the minimizing point
    std::vector<std::vector<double>> mass;      // [time][rho]
    std::vector<std::vector<double>> ci;        // [time][rho]
    std::string caveat;
};

/// Empirical screen of the small-ball criterion: p_{n_k}(B(0, rho)) >= c rho^2
/// across the grid, up to Monte Carlo error. A necessary-condition check,
/// not a proof: it presumes ergodicity, which the data cannot certify.
/// Default c is half the fitted Gaussian small-ball coefficient.
SchmidtVerdict schmidt_check(const TraceEnsemble& ens, const std::vector<long>& times,
                             const std::vector<double>& rho_grid,
                             std::optional<double> c_override = std::nullopt);

struct CltDiagnostics {
    Vec2 mean = Vec2::Zero();
    Mat2 cov = Mat2::Zero();
    Vec2 mean_se = Vec2::Zero();
    double ks_x = 0, ks_y = 0, ks_threshold = 0;
    long trials = 0;
};

CltDiagnostics clt_diagnostics(const TraceEnsemble& ens, long n);

struct MsdCurve {
    std::vector<long> n;
    std::vector<double> msd;
    double slope = 0, intercept = 0, r2 = 0, slope_ci = 0;
};

/// Mean squared displacement over a thinned n-grid with a linear fit.
MsdCurve msd_curve(const TraceEnsemble& ens);

// ---- shipped systems ----

/// Example 1 walk. Digits of y1 are simulated as a fresh uniform base-4
/// digit stream (the Bernoulli-shift law of K_4), so traces of any length
/// stay exact in law; iterating doubles would exhaust the mantissa.
TraceSource ex1_source(std::array<double, 3> label_probs = {1.0 / 3, 1.0 / 3, 1.0 / 3});

/// Example 2 walk, base-2 digit stream.
TraceSource ex2_source(std::array<double, 2> label_probs = {0.5, 0.5});

/// Example 3 deterministic walk in a fresh random environment per trial.
TraceSource ex3_source(std::array<double, 4> label_probs);

/// All-Forward rotator: ballistic reference system.
TraceSource ballistic_source();

/// Cell-exit chain of the billiard skew product: fresh environment and
/// mu_1-random start per trial.
TraceSource skew_source(ensemble::LawPtr law);

}  // namespace lorentz::analytics
