#pragma once

#include <utility>
#include <vector>

namespace lorentz::stats {

/// Wilson 95% score interval for k successes in n trials.
std::pair<double, double> wilson_interval(long k, long n, double z = 1.959963984540054);

/// Normal CDF.
double normal_cdf(double x);

/// Kolmogorov-Smirnov distance of samples against N(mu, sigma^2).
double ks_distance_normal(std::vector<double> samples, double mu, double sigma);

/// KS distance against the uniform law on [0, total).
double ks_distance_uniform(std::vector<double> samples, double total);

/// Upper-tail p-value of the chi-squared law with even dof (closed form).
double chi_squared_pvalue_even_dof(double x, int dof);

struct LineFit {
    double slope, intercept, r2, slope_se;
};

/// Ordinary least squares y = a + b x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lorentz::stats
