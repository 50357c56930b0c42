#include "stablex/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "stablex/stats.hpp"

namespace stablex {

namespace {

double left_support_cut(const StableParams& p) {
    return std::pow(766.0 / p.c_alpha, 1.0 / p.alpha_prime) + 1.0;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> cdf_from_density(const std::vector<double>& grid, std::vector<double> dens) {
    std::vector<double> cdf(grid.size(), 0.0);
    for (size_t i = 1; i < grid.size(); ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (dens[i] + dens[i - 1]) * (grid[i] - grid[i - 1]);
    const double total = cdf.back();
    for (auto& c : cdf) c /= total;
    return cdf;
}

// 64-point Gauss-Legendre nodes/weights on [0,1], generated once.
struct GL64 {
    double x[64], w[64];
    GL64() {
        // Newton iteration on Legendre P_64 roots over [-1,1]
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
            x[i] = 0.5 * (1.0 - t);
            w[i] = 0.5 * wi;
            x[n - 1 - i] = 0.5 * (1.0 + t);
            w[n - 1 - i] = 0.5 * wi;
        }
    }
};
const GL64& gl64() {
    static GL64 g;
    return g;
}

// Fast killed transition via the master p1 interpolant of `ms`.
double killed_fast(const MidpointSampler& ms, double t, double x, double y) {
    const double alpha = ms.params().alpha;
    auto pt = [&](double tt, double z) {
        const double s = std::pow(tt, 1.0 / alpha);
        return ms.p1(z / s) / s;
    };
    const GL64& g = gl64();
    double integ = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double s = t * g.x[i];
        integ += t * g.w[i] * (x / s) * pt(s, -x) * pt(t - s, y);
    }
    return std::max(pt(t, y - x) - integ, 0.0);
}

}  // namespace

std::vector<CheckResult> bridge_marginal_checks(const StableParams& params, double a,
                                                std::int64_t n_samples, std::uint64_t seed,
                                                double ks_threshold, const SamplerConfig& config) {
    RngStream root(seed);
    std::vector<double> v14(n_samples), v12(n_samples);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton sk = sample_bridge(params, a, 4, r, config);
        v14[i] = sk.values[1];
        v12[i] = sk.values[2];
    }
    const double cut = left_support_cut(params);
    std::vector<CheckResult> out;
    const std::pair<double, const std::vector<double>*> cases[2] = {{0.25, &v14}, {0.5, &v12}};
    for (const auto& [t, vals_ptr] : cases) {
        const std::vector<double>& vals = *vals_ptr;
        const double st = std::pow(t, 1.0 / params.alpha);
        const double su = std::pow(1.0 - t, 1.0 / params.alpha);
        const double lo = -cut * st + std::min(a, 0.0) - 1.0;
        const double hi = a + cut * su + 1.0;
        const auto grid = linspace(lo, hi, 4001);
        std::vector<double> dens(grid.size());
        for (size_t i = 0; i < grid.size(); ++i)
            dens[i] = density(params, t, grid[i]) * density(params, 1.0 - t, a - grid[i]);
        const auto cdf = cdf_from_density(grid, dens);
        const double ks = ks_distance(vals, grid, cdf);
        std::ostringstream det;
        det << "alpha=" << params.alpha << " a=" << a << " t=" << t << " N=" << n_samples;
        out.push_back({"bridge_marginal_ks", ks, ks_threshold, ks < ks_threshold, det.str()});
    }
    return out;
}

std::vector<CheckResult> excursion_conditional_checks(const StableParams& params,
                                                      std::int64_t target_conditioned, int n,
                                                      std::uint64_t seed, double ks_threshold,
                                                      const SamplerConfig& config) {
    const MidpointSampler& ms = midpoint_sampler(params, config);
    RngStream root(seed);
    std::vector<double> xs, ys;
    std::int64_t produced = 0;
    const std::int64_t hard_cap = 300 * target_conditioned;
    while (static_cast<std::int64_t>(ys.size()) < target_conditioned && produced < hard_cap) {
        RngStream r = root.child(produced);
        PathSkeleton e = sample_excursion(params, n, r, config);
        ++produced;
        const double x = e.values[n / 2];
        if (std::abs(x - 1.0) <= 0.05) {
            xs.push_back(x);
            ys.push_back(e.values[3 * n / 4]);
        }
    }

    // reference densities on a y grid
    const double cut = left_support_cut(params);
    const double hi = 1.05 + cut * std::pow(0.25, 1.0 / params.alpha) + 1.0;
    const auto grid = linspace(1e-6, hi, 1601);
    auto q_of = [&](double x, double t) {
        const double s = std::pow(t, 1.0 / params.alpha);
        return x / t * ms.p1(-x / s) / s;
    };
    const size_t mixn = std::min<size_t>(xs.size(), 256);
    std::vector<double> mix(grid.size(), 0.0), pinned(grid.size(), 0.0);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double y = grid[i];
        const double qy = q_of(y, 0.25);
        for (size_t k = 0; k < mixn; ++k)
            mix[i] += killed_fast(ms, 0.25, xs[k], y) * qy / q_of(xs[k], 0.5);
        pinned[i] = killed_fast(ms, 0.25, 1.0, y) * qy / q_of(1.0, 0.5);
    }
    const auto cdf_mix = cdf_from_density(grid, mix);
    const auto cdf_pin = cdf_from_density(grid, pinned);

    std::ostringstream det;
    det << "alpha=" << params.alpha << " n=" << n << " conditioned=" << ys.size()
        << " of " << produced << " excursions";
    std::vector<CheckResult> out;
    out.push_back({"excursion_conditional_ks", ks_distance(ys, grid, cdf_mix), ks_threshold,
                   false, det.str()});
    out.back().pass = out.back().stat < ks_threshold;
    out.push_back({"excursion_conditional_ks_pinned_x1", ks_distance(ys, grid, cdf_pin),
                   ks_threshold, false, "reference pinned at x=1 (window smear included)"});
    out.back().pass = out.back().stat < ks_threshold;
    return out;
}

std::vector<CheckResult> skeleton_invariant_checks(const StableParams& params, double a,
                                                   std::int64_t n_samples, int n,
                                                   std::uint64_t seed,
                                                   const SamplerConfig& config) {
    RngStream root(seed);
    std::int64_t endpoint_violations = 0, nonneg_violations = 0, exc_end_violations = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r1 = root.child(2 * i);
        PathSkeleton b = sample_bridge(params, a, n, r1, config);
        if (b.values[n] != a) ++endpoint_violations;
        RngStream r2 = root.child(2 * i + 1);
        PathSkeleton e = sample_excursion(params, n, r2, config);
        for (double v : e.values)
            if (v < -1e-9) {
                ++nonneg_violations;
                break;
            }
        if (std::abs(e.values[n]) > 1e-9 || std::abs(e.values[0]) > 1e-9) ++exc_end_violations;
    }
    std::vector<CheckResult> out;
    out.push_back({"bridge_endpoint_exact", static_cast<double>(endpoint_violations), 0.5,
                   endpoint_violations == 0, "bit-exact endpoint == a"});
    out.push_back({"excursion_nonnegative", static_cast<double>(nonneg_violations), 0.5,
                   nonneg_violations == 0, "values >= -1e-9"});
    out.push_back({"excursion_endpoints", static_cast<double>(exc_end_violations), 0.5,
                   exc_end_violations == 0, "|v(0)|, |v(1)| <= 1e-9"});
    return out;
}

CheckResult zero_bridge_reversal_check(const StableParams& params, std::int64_t n_samples,
                                       std::uint64_t seed, const SamplerConfig& config) {
    RngStream root(seed);
    std::vector<double> at_t(n_samples), at_rev(n_samples);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton sk = sample_bridge(params, 0.0, 4, r, config);
        at_t[i] = sk.values[1];
        at_rev[i] = sk.values[3];
    }
    const double d = ks_two_sample(at_t, at_rev);
    const double p = ks_two_sample_pvalue(d, at_t.size(), at_rev.size());
    std::ostringstream det;
    det << "two-sample KS p-value " << p << " (level 1e-3), D=" << d;
    return {"zero_bridge_time_reversal", p, 1e-3, p >= 1e-3, det.str()};
}

std::vector<CheckResult> increment_laplace_checks(const StableParams& params, double t,
                                                  const std::vector<double>& lambdas,
                                                  std::int64_t n_samples, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> draws(n_samples);
    for (auto& d : draws) d = stable_increment(params, t, rng);
    std::vector<CheckResult> out;
    for (double lam : lambdas) {
        double s = 0.0, s2 = 0.0;
        for (double d : draws) {
            const double e = std::exp(-lam * d);
            s += e;
            s2 += e * e;
        }
        const double mean = s / n_samples;
        const double var = std::max(s2 / n_samples - mean * mean, 0.0);
        const double se = std::sqrt(var / n_samples);
        const double target = std::exp(t * std::pow(lam, params.alpha));
        const double dev = std::abs(mean - target);
        std::ostringstream det;
        det << "lambda=" << lam << " mean=" << mean << " target=" << target << " se=" << se;
        out.push_back({"increment_laplace", dev, 3.0 * se, dev <= 3.0 * se, det.str()});
    }
    return out;
}

CheckResult increment_scaling_check(const StableParams& params, double t,
                                    std::int64_t n_samples, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> a(n_samples), b(n_samples);
    const double sc = std::pow(t, 1.0 / params.alpha);
    for (auto& v : a) v = stable_increment(params, t, rng);
    for (auto& v : b) v = sc * stable_increment(params, 1.0, rng);
    const double d = ks_two_sample(a, b);
    const double p = ks_two_sample_pvalue(d, a.size(), b.size());
    std::ostringstream det;
    det << "t=" << t << " D=" << d << " p=" << p;
    return {"increment_scaling_ks", p, 1e-3, p >= 1e-3, det.str()};
}

CheckResult free_tail_check(const StableParams& params, double x, std::int64_t n_samples,
                            std::uint64_t seed, double rel_tolerance) {
    RngStream rng(seed);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n_samples; ++i)
        if (stable_increment(params, 1.0, rng) > x) ++hits;
    const double emp = std::pow(x, params.alpha) * hits / n_samples;
    // reference: quadrature tail mass (integrate density above x, plus the
    // analytic remainder beyond the far cutoff)
    const double far = 2.0e4 * detail::s1_scale(params.alpha);
    auto f = [&](double u) { return density(params, 1.0, u); };
    const auto r = integrate_adaptive(f, x, far, {1e-9, 1e-14, 300});
    const double tail = r.value + params.C_alpha * std::pow(far, -params.alpha);
    const double ref = std::pow(x, params.alpha) * tail;
    const double rel = std::abs(emp - ref) / ref;
    std::ostringstream det;
    det << "x=" << x << " empirical=" << emp << " quadrature=" << ref
        << " C_alpha=" << params.C_alpha;
    return {"free_tail_xalpha", rel, rel_tolerance, rel < rel_tolerance, det.str()};
}

EntranceTailResult entrance_tail_diagnostic(const StableParams& params, double t, int n,
                                            const std::vector<double>& xs,
                                            std::int64_t n_samples, std::uint64_t seed,
                                            const SamplerConfig& config) {
    RngStream root(seed);
    const int idx = static_cast<int>(std::lround(t * n));
    std::vector<std::int64_t> hits(xs.size(), 0);
    const double st = std::pow(t, 1.0 / params.alpha);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton e = sample_excursion(params, n, r, config);
        const double v = e.values[idx];
        for (size_t k = 0; k < xs.size(); ++k)
            if (v > xs[k] * st) ++hits[k];
    }
    EntranceTailResult res;
    for (size_t k = 0; k < xs.size(); ++k)
        res.rows.push_back(
            {xs[k], std::pow(xs[k], params.alpha) * hits[k] / n_samples, hits[k]});
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < res.rows.size(); ++k) {
        if (res.rows[k].scaled_tail <= 0 || res.rows[k + 1].scaled_tail <= 0) continue;
        const double ratio = res.rows[k + 1].scaled_tail / res.rows[k].scaled_tail;
        best = std::min(best, std::max(ratio, 1.0 / ratio));
    }
    res.best_pair_ratio = best;
    std::ostringstream det;
    det << "t=" << t << " flattest adjacent ratio " << best << " (band 1.35)";
    res.check = {"entrance_tail_plateau", best, 1.35, best <= 1.35, det.str()};
    return res;
}

}  // namespace stablex
