#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace stablex {

/// Wilson 95% score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n);

/// One-sample Kolmogorov-Smirnov distance between samples and a reference CDF
/// given as a curve (grid, cdf values); samples need not be sorted.
double ks_distance(std::vector<double> samples, const std::vector<double>& grid,
                   const std::vector<double>& cdf);

/// Two-sample KS distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample KS p-value (Kolmogorov distribution tail).
double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_se = 0.0;  // from provided per-point variances when given
};

/// Ordinary least squares y ~ slope * x + intercept. If `var_y` is non-empty
/// the slope standard error propagates those variances; otherwise it comes
/// from the residuals.
OlsFit ols(const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& var_y = {});

/// Delete-one-batch jackknife mean and standard error of a statistic given
/// per-batch accumulator sums and a finalizer applied to the pooled mean.
struct Jackknife {
    double estimate = 0.0;
    double se = 0.0;
};

Jackknife jackknife_ratio(const std::vector<double>& batch_sums,
                          const std::vector<std::int64_t>& batch_counts,
                          double (*finalize)(double, void*), void* ctx);

}  // namespace stablex
