#include "stablex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stablex {

std::pair<double, double> wilson_interval(std::int64_t k, std::int64_t n) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("wilson_interval: bad counts");
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double z2 = z * z;
    const double p = static_cast<double>(k) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ks_distance(std::vector<double> samples, const std::vector<double>& grid,
                   const std::vector<double>& cdf) {
    if (samples.empty() || grid.size() != cdf.size() || grid.size() < 2)
        throw std::invalid_argument("ks_distance: bad inputs");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[i];
        double f;
        if (x <= grid.front())
            f = cdf.front();
        else if (x >= grid.back())
            f = cdf.back();
        else {
            const auto it = std::upper_bound(grid.begin(), grid.end(), x);
            const size_t j = it - grid.begin();
            const double w = (x - grid[j - 1]) / (grid[j] - grid[j - 1]);
            f = cdf[j - 1] + w * (cdf[j] - cdf[j - 1]);
        }
        d = std::max(d, std::abs(f - (i + 1) / n));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2) {
    const double ne = static_cast<double>(n1) * n2 / (n1 + n2);
    const double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lam * lam);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& var_y) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("ols: need >= 2 points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols: degenerate x values");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        ssr += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    if (!var_y.empty()) {
        if (var_y.size() != n) throw std::invalid_argument("ols: var_y size mismatch");
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double w = (x[i] - mx) / sxx;
            acc += w * w * var_y[i];
        }
        fit.slope_se = std::sqrt(acc);
    } else if (n > 2) {
        fit.slope_se = std::sqrt(ssr / (n - 2) / sxx);
    }
    return fit;
}

Jackknife jackknife_ratio(const std::vector<double>& batch_sums,
                          const std::vector<std::int64_t>& batch_counts,
                          double (*finalize)(double, void*), void* ctx) {
    const size_t m = batch_sums.size();
    if (m < 2 || batch_counts.size() != m)
        throw std::invalid_argument("jackknife_ratio: need >= 2 batches");
    double total = 0.0;
    std::int64_t count = 0;
    for (size_t i = 0; i < m; ++i) {
        total += batch_sums[i];
        count += batch_counts[i];
    }
    Jackknife out;
    out.estimate = finalize(total / count, ctx);
    std::vector<double> pseudo(m);
    double mean = 0.0;
    for (size_t i = 0; i < m; ++i) {
        pseudo[i] = finalize((total - batch_sums[i]) / (count - batch_counts[i]), ctx);
        mean += pseudo[i];
    }
    mean /= m;
    double var = 0.0;
    for (size_t i = 0; i < m; ++i) var += (pseudo[i] - mean) * (pseudo[i] - mean);
    out.se = std::sqrt(var * (m - 1) / m);
    return out;
}

}  // namespace stablex
