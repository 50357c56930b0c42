#include "stablex/ldp_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stablex/path_space.hpp"

namespace stablex {

FunctionalSamples collect_excursion_functionals(const StableParams& params, std::int64_t n_samples,
                                                int n, std::uint64_t seed,
                                                const SamplerConfig& config) {
    midpoint_sampler(params, config);  // build tables before the hot loop
    FunctionalSamples out;
    out.area.resize(n_samples);
    out.sup.resize(n_samples);
    RngStream root(seed);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton e = sample_excursion(params, n, r, config);
        out.area[i] = functional_area(e);
        out.sup[i] = functional_sup(e);
    }
    return out;
}

std::vector<double> collect_bridge_sup(const StableParams& params, std::int64_t n_samples, int n,
                                       std::uint64_t seed, const SamplerConfig& config) {
    midpoint_sampler(params, config);
    std::vector<double> out(n_samples);
    RngStream root(seed);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton b = sample_bridge(params, 0.0, n, r, config);
        out[i] = std::max(functional_sup(b), 0.0);
    }
    return out;
}

TailEstimate tail_from_values(const std::vector<double>& values,
                              const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("tail_from_values: no thresholds");
    for (size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] > thresholds[i - 1]))
            throw std::invalid_argument("tail_from_values: thresholds must increase");
    TailEstimate te;
    te.thresholds = thresholds;
    te.n_samples = static_cast<std::int64_t>(values.size());
    te.hits.assign(thresholds.size(), 0);
    for (double v : values)
        for (size_t k = 0; k < thresholds.size(); ++k) {
            if (v > thresholds[k])
                ++te.hits[k];
            else
                break;  // thresholds ascending
        }
    te.estimate.resize(thresholds.size());
    te.wilson_lo.resize(thresholds.size());
    te.wilson_hi.resize(thresholds.size());
    te.usable.resize(thresholds.size());
    for (size_t k = 0; k < thresholds.size(); ++k) {
        te.estimate[k] = static_cast<double>(te.hits[k]) / te.n_samples;
        auto [lo, hi] = wilson_interval(te.hits[k], te.n_samples);
        te.wilson_lo[k] = lo;
        te.wilson_hi[k] = hi;
        te.usable[k] = te.hits[k] >= 30;
    }
    return te;
}

TailEstimate estimate_tail(const StableParams& params, TailFunctional functional, TailKind kind,
                           const std::vector<double>& thresholds, std::int64_t n_samples, int n,
                           std::uint64_t seed, const SamplerConfig& config) {
    if (kind == TailKind::bridge_sup) {
        if (functional != TailFunctional::sup)
            throw std::invalid_argument("estimate_tail: bridge kind supports the sup functional");
        return tail_from_values(collect_bridge_sup(params, n_samples, n, seed, config),
                                thresholds);
    }
    const FunctionalSamples fs = collect_excursion_functionals(params, n_samples, n, seed, config);
    return tail_from_values(functional == TailFunctional::area ? fs.area : fs.sup, thresholds);
}

SlopeFit fit_ldp_slope(const StableParams& params, const TailEstimate& estimate,
                       double theory_slope) {
    std::vector<double> x, y, var;
    for (size_t k = 0; k < estimate.thresholds.size(); ++k) {
        if (!estimate.usable[k]) continue;
        const double p = estimate.estimate[k];
        x.push_back(std::pow(estimate.thresholds[k], params.alpha_prime));
        y.push_back(-std::log(p));
        var.push_back((1.0 - p) / (estimate.n_samples * p));  // delta method on log p-hat
    }
    if (x.size() < 3) throw std::invalid_argument("fit_ldp_slope: need >= 3 usable thresholds");
    bool degenerate = true;
    for (size_t i = 1; i < y.size(); ++i)
        if (y[i] != y[0]) degenerate = false;
    if (degenerate) throw std::runtime_error("fit_ldp_slope: degenerate fit, equal estimates");
    const OlsFit f = ols(x, y, var);
    SlopeFit sf;
    sf.slope = f.slope;
    sf.intercept = f.intercept;
    sf.r2 = f.r2;
    sf.slope_se = f.slope_se;
    sf.theory_slope = theory_slope;
    sf.relative_deviation = std::abs(f.slope - theory_slope) / theory_slope;
    sf.points_used = static_cast<int>(x.size());
    return sf;
}

double theory_tail_slope(const StableParams& params, TailFunctional functional, TailKind kind) {
    if (kind == TailKind::bridge_sup || functional == TailFunctional::sup) return params.c_alpha;
    return params.c_alpha * std::pow(params.alpha + 1.0, 1.0 / (params.alpha - 1.0));
}

namespace {
struct RatioCtx {
    double k;
    double norm;  // (k/e)^{1/alpha'}
};
double ratio_finalize(double mean_kth_moment, void* ctx) {
    const auto* c = static_cast<const RatioCtx*>(ctx);
    return std::pow(std::max(mean_kth_moment, 0.0), 1.0 / c->k) / c->norm;
}
}  // namespace

MomentGrowth moments_from_values(const StableParams& params, const std::vector<double>& values,
                                 double gamma_phi, int k_max) {
    if (k_max < 1 || k_max > 12)
        throw std::invalid_argument("moments_from_values: k_max must be in [1,12]");
    MomentGrowth mg;
    mg.limit = std::pow(params.alpha, 1.0 / params.alpha) * gamma_phi;
    const int nb = 50;
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    for (int k = 1; k <= k_max; ++k) {
        std::vector<double> sums(nb, 0.0);
        std::vector<std::int64_t> counts(nb, 0);
        for (std::int64_t i = 0; i < n; ++i) {
            const int b = static_cast<int>(i * nb / n);
            sums[b] += std::pow(values[i], k);
            ++counts[b];
        }
        RatioCtx ctx{static_cast<double>(k),
                     std::pow(k / 2.718281828459045, 1.0 / params.alpha_prime)};
        const Jackknife jk = jackknife_ratio(sums, counts, &ratio_finalize, &ctx);
        MomentRow row;
        row.k = k;
        row.ratio = jk.estimate;
        row.se = jk.se;
        row.flagged = jk.se > 0.5 * std::abs(jk.estimate);
        mg.rows.push_back(row);
    }
    return mg;
}

MomentGrowth moment_growth(const StableParams& params, TailFunctional functional, int k_max,
                           std::int64_t n_samples, int n, std::uint64_t seed,
                           const SamplerConfig& config) {
    const FunctionalSamples fs = collect_excursion_functionals(params, n_samples, n, seed, config);
    const double gamma = functional == TailFunctional::area
                             ? std::pow(params.alpha + 1.0, -1.0 / params.alpha)
                             : 1.0;
    return moments_from_values(params, functional == TailFunctional::area ? fs.area : fs.sup,
                               gamma, k_max);
}

LaplaceGrowth laplace_from_values(const StableParams& params, const std::vector<double>& values,
                                  double gamma_phi, const std::vector<double>& t_grid) {
    LaplaceGrowth lg;
    lg.limit = std::pow(gamma_phi, params.alpha);
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    for (double t : t_grid) {
        double sum = 0.0;
        for (double v : values) sum += std::exp(t * v);
        double top = 0.0;
        for (size_t i = sorted.size() - std::min<size_t>(10, sorted.size()); i < sorted.size(); ++i)
            top += std::exp(t * sorted[i]);
        LaplaceGrowthRow row;
        row.t = t;
        row.ratio = std::log(sum / values.size()) / std::pow(t, params.alpha);
        row.top10_share = top / sum;
        row.trusted = row.top10_share < 0.5;
        lg.rows.push_back(row);
    }
    return lg;
}

LaplaceGrowth laplace_growth(const StableParams& params, TailFunctional functional,
                             const std::vector<double>& t_grid, std::int64_t n_samples, int n,
                             std::uint64_t seed, const SamplerConfig& config) {
    const FunctionalSamples fs = collect_excursion_functionals(params, n_samples, n, seed, config);
    const double gamma = functional == TailFunctional::area
                             ? std::pow(params.alpha + 1.0, -1.0 / params.alpha)
                             : 1.0;
    return laplace_from_values(params, functional == TailFunctional::area ? fs.area : fs.sup,
                               gamma, t_grid);
}

TightnessResult tightness_moment_check(const StableParams& params, std::int64_t n_samples,
                                       std::uint64_t seed, const SamplerConfig& config) {
    const int n = 64;
    const double t1s[3] = {0.0, 0.125, 0.25};
    const double gaps[3] = {0.0625, 0.125, 0.25};
    const double lambdas[3] = {0.5, 1.0, 2.0};

    // collect skeletons once; store the grid values we need
    std::vector<std::vector<double>> paths(n_samples);
    RngStream root(seed);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        paths[i] = sample_excursion(params, n, r, config).values;
    }

    TightnessResult res;
    std::vector<double> resid;  // log mgf - (t2-t1) lambda^alpha, before the c offset
    std::vector<double> ci;     // MC half-widths of log mgf
    std::vector<double> gap_x, gap_y;  // lambda = 2 regression diagnostic
    for (double lam : lambdas) {
        for (double t1 : t1s)
            for (double g1 : gaps)
                for (double g2 : gaps) {
                    const double t = t1 + g1, t2 = t1 + g1 + g2;
                    const int i1 = static_cast<int>(std::lround(t1 * n));
                    const int im = static_cast<int>(std::lround(t * n));
                    const int i2 = static_cast<int>(std::lround(t2 * n));
                    double sum = 0.0, sum2 = 0.0;
                    for (auto& p : paths) {
                        const double e = std::exp(lam * m_value(p[i1], p[im], p[i2]));
                        sum += e;
                        sum2 += e * e;
                    }
                    const double mean = sum / n_samples;
                    const double var = std::max(sum2 / n_samples - mean * mean, 0.0);
                    const double logm = std::log(mean);
                    res.rows.push_back({t1, t, t2, lam, logm});
                    resid.push_back(logm - (t2 - t1) * std::pow(lam, params.alpha));
                    ci.push_back(std::sqrt(var / n_samples) / mean);
                    if (lam == 2.0) {
                        gap_x.push_back(t2 - t1);
                        gap_y.push_back(logm);
                    }
                }
    }
    // single fitted constant; the bound then caps every cell up to MC slack
    double c_ls = 0.0;
    for (double r : resid) c_ls += r;
    c_ls /= resid.size();
    res.fitted_log_c = c_ls;
    res.max_residual = 0.0;
    bool ok = true;
    for (size_t i = 0; i < resid.size(); ++i) {
        const double over = resid[i] - c_ls;
        res.max_residual = std::max(res.max_residual, over);
        if (over > 0.5 + 3.0 * ci[i]) ok = false;
    }
    res.form_pass = ok;
    const OlsFit f = ols(gap_x, gap_y);
    res.gap_slope_ratio = f.slope / std::pow(2.0, params.alpha);

    // Lemma 5.2 probe: P(sup over [1-delta, 1] > 0.5) decreasing in delta
    res.endpoint_deltas = {0.25, 0.125, 0.0625};
    for (double d : res.endpoint_deltas) {
        const int from = static_cast<int>(std::lround((1.0 - d) * n));
        std::int64_t hits = 0;
        for (auto& p : paths) {
            for (int i = from; i <= n; ++i)
                if (p[i] > 0.5) {
                    ++hits;
                    break;
                }
        }
        res.endpoint_probs.push_back(static_cast<double>(hits) / n_samples);
    }
    res.endpoint_pass = res.endpoint_probs[0] > res.endpoint_probs[1] &&
                        res.endpoint_probs[1] > res.endpoint_probs[2];
    return res;
}

ProbeResult j1_two_jump_probe(const StableParams& params, double delta,
                              const std::vector<double>& eps_grid, std::int64_t n_samples, int n,
                              std::uint64_t seed, const SamplerConfig& config) {
    const int i1 = static_cast<int>(std::lround(delta * n));
    const int i2 = static_cast<int>(std::lround(2.0 * delta * n));
    if (i1 < 1 || i1 == i2 || i2 > n)
        throw std::invalid_argument("j1_two_jump_probe: delta must fit the grid");

    std::vector<std::int64_t> hits(eps_grid.size(), 0);
    RngStream root(seed);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        RngStream r = root.child(i);
        PathSkeleton e = sample_excursion(params, n, r, config);
        const double v1 = e.values[i1], v2 = e.values[i2];
        for (size_t k = 0; k < eps_grid.size(); ++k) {
            const double eps = eps_grid[k];
            if (v1 >= 1.0 / eps && v1 <= 2.0 / eps && v2 >= 3.0 / eps && v2 <= 4.0 / eps)
                ++hits[k];
        }
    }

    ProbeResult res;
    res.delta = delta;
    res.floor_display = -params.c_alpha * std::pow(3.0 / (1.0 - 2.0 * delta), params.alpha_prime);
    res.floor_limit = -std::pow(3.0, params.alpha_prime) * params.c_alpha;

    // fit the existential prefactor: log p = log C + (2a+2) log eps + floor eps^{-a'}
    double acc = 0.0;
    int m = 0;
    for (size_t k = 0; k < eps_grid.size(); ++k) {
        ProbeRow row;
        row.eps = eps_grid[k];
        row.hits = hits[k];
        row.p_hat = static_cast<double>(hits[k]) / n_samples;
        row.q_scaled = hits[k] > 0
                           ? std::pow(row.eps, params.alpha_prime) * std::log(row.p_hat)
                           : -std::numeric_limits<double>::infinity();
        row.trusted = hits[k] >= 10;
        res.rows.push_back(row);
        if (row.trusted) {
            acc += std::log(row.p_hat) - (2.0 * params.alpha + 2.0) * std::log(row.eps) -
                   res.floor_display * std::pow(row.eps, -params.alpha_prime);
            ++m;
        }
    }
    res.soft_warn = m < 2;
    res.fitted_log_c = m > 0 ? acc / m : 0.0;
    bool all_ok = true;
    for (auto& row : res.rows) {
        if (!row.trusted) continue;
        const double model = res.fitted_log_c + (2.0 * params.alpha + 2.0) * std::log(row.eps) +
                             res.floor_display * std::pow(row.eps, -params.alpha_prime);
        row.residual = std::log(row.p_hat) - model;
        const double ci =
            row.hits > 0 ? 1.0 / std::sqrt(static_cast<double>(row.hits)) : 10.0;
        if (row.residual < -(1.5 + 3.0 * ci)) all_ok = false;
    }
    res.pass = res.soft_warn || all_ok;
    return res;
}

}  // namespace stablex
