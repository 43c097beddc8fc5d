#include "lorentz/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lorentz::stats {

std::pair<double, double> wilson_interval(long k, long n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double p = static_cast<double>(k) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_normal(std::vector<double> samples, double mu, double sigma) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double F = normal_cdf((samples[i] - mu) / sigma);
        d = std::max(d, std::abs(F - (i + 1) / n));
        d = std::max(d, std::abs(F - i / n));
    }
    return d;
}

double ks_distance_uniform(std::vector<double> samples, double total) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double F = samples[i] / total;
        d = std::max(d, std::abs(F - (i + 1) / n));
        d = std::max(d, std::abs(F - i / n));
    }
    return d;
}

double chi_squared_pvalue_even_dof(double x, int dof) {
    if (dof % 2 != 0 || dof <= 0) throw std::invalid_argument("even dof required");
    const int m = dof / 2;
    const double h = x / 2;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < m; ++j) {
        term *= h / j;
        sum += term;
    }
    return std::exp(-h) * sum;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LineFit fit{};
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    const double sigma2 = n > 2 ? ss_res / (n - 2) : 0.0;
    fit.slope_se = std::sqrt(sigma2 * n / denom);
    return fit;
}

}  // namespace lorentz::stats
