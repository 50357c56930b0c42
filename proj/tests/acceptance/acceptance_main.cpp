// Acceptance suite: one criterion per invocation (argv[1] in 1..8; 6 also
// runs 7, which shares its samples). Prints one line per sub-check and a
// summary line per criterion; exit code 0 iff every sub-check passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "stablex/ldp_harness.hpp"
#include "stablex/path_space.hpp"
#include "stablex/rate_functions.hpp"
#include "stablex/rng.hpp"
#include "stablex/sampling.hpp"
#include "stablex/stable_math.hpp"
#include "stablex/validation.hpp"
#include "stablex/variational.hpp"

using namespace stablex;

namespace {

int g_fail = 0;

void check(bool ok, const std::string& label, const std::string& detail) {
    std::printf("  [%s] %s  %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_fail;
}

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.6g", v);
    return b;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    std::puts("criterion 1: density oracles");
    for (double alpha : {4.0 / 3.0, 1.5}) {
        auto p = make_params(alpha);
        auto f = [&](double x) { return density(p, 1.0, x); };
        auto r = integrate_adaptive(f, -20.0, 400.0, {1e-9, 1e-13, 400});
        const double mass = r.value + p.C_alpha * std::pow(400.0, -alpha);
        check(r.converged && std::abs(mass - 1.0) < 1e-6, "normalization alpha=" + fmt(alpha),
              "integral " + fmt(mass));

        for (double lam : {0.1, 0.5, 1.0, 2.0, 3.0}) {
            const double lt = laplace_transform(p, lam);
            const double tgt = std::exp(std::pow(lam, alpha));
            check(std::abs(lt / tgt - 1.0) < 1e-4,
                  "laplace alpha=" + fmt(alpha) + " lambda=" + fmt(lam),
                  "value " + fmt(lt) + " target " + fmt(tgt));
        }

        // Right tail: the density coefficient is alpha*C_alpha; C_alpha itself
        // is the probability-tail coefficient (see the decisions ledger on the
        // source display). Both are printed.
        const double coef = std::pow(50.0, alpha + 1.0) * density(p, 1.0, 50.0);
        check(std::abs(coef / (alpha * p.C_alpha) - 1.0) < 0.05,
              "right-tail density coefficient alpha=" + fmt(alpha),
              "x^{a+1}p(x)=" + fmt(coef) + " alpha*C=" + fmt(alpha * p.C_alpha) +
                  " (C=" + fmt(p.C_alpha) + ")");

        const double lt4 = -std::log(density(p, 1.0, -4.0)) / std::pow(4.0, p.alpha_prime);
        check(std::abs(lt4 / p.c_alpha - 1.0) < 0.05, "left-tail exponent alpha=" + fmt(alpha),
              "-log p(-4)/4^a' = " + fmt(lt4) + " c=" + fmt(p.c_alpha));
    }
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    std::puts("criterion 2: rate-function suite");
    auto p = make_params(4.0 / 3.0);

    RngStream rng(1234);
    bool homog = true, zero_set = true, refine = true;
    for (int rep = 0; rep < 60; ++rep) {
        std::vector<double> t{0.0}, v{rng.uniform01() * 2};
        for (int i = 0; i < 5; ++i) t.push_back(rng.uniform01());
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        t.push_back(1.0);
        while (v.size() + 1 < t.size()) v.push_back(rng.uniform01() * 2);
        v.push_back(0.0);
        auto f = CadlagPath::linear_path(t, v);
        const double lam = 0.25 + 2.5 * rng.uniform01();
        const double r1 = rate_excursion(p, f).value;
        const double r2 = rate_excursion(p, f.scaled(lam)).value;
        if (std::abs(r2 - std::pow(lam, p.alpha_prime) * r1) >
            1e-9 * std::max(1.0, std::abs(r2)))
            homog = false;
        if (r1 == 0.0 && f.max_value() != 0.0) zero_set = false;

        std::vector<double> coarse{0.25, 0.5, 0.75};
        std::vector<double> fine{0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};
        auto vals = [&](const std::vector<double>& ts) {
            std::vector<double> o;
            for (double u : ts) o.push_back(f.value(u));
            return o;
        };
        const double jc = finite_dim_rate_excursion(p, Subdivision(coarse), vals(coarse)).value;
        const double jf = finite_dim_rate_excursion(p, Subdivision(fine), vals(fine)).value;
        if (jc > jf + 1e-12 || jf > r1 + 1e-12) refine = false;
    }
    check(homog, "homogeneity", "rate(lambda f) = lambda^{a'} rate(f), 60 random paths");
    check(zero_set, "zero set", "rate 0 only for the zero path");
    check(refine, "refinement monotonicity + dominance", "J_sigma <= J_sigma' <= I");
    CHECKED_ZERO:;

    // dyadic convergence on the two analytic paths at 2^11 points
    auto ramp = CadlagPath::linear_path({0.0, 1.0}, {1.0, 0.0});
    const double gap1 = p.c_alpha - dyadic_rate(p, ramp, 1 << 11).value;
    check(gap1 > 0 && gap1 < 1e-3, "dyadic convergence (linear ramp)",
          "gap " + fmt(gap1) + " at 2^11");

    const int m = 1 << 12;
    std::vector<double> tt(m + 1), vv(m + 1);
    const double c = std::pow(p.alpha + 1.0, 1.0 / p.alpha_prime) / p.alpha;
    for (int i = 0; i <= m; ++i) {
        tt[i] = static_cast<double>(i) / m;
        vv[i] = c * (1.0 - std::pow(tt[i], p.alpha));
    }
    vv[m] = 0.0;
    auto fstar = CadlagPath::linear_path(tt, vv);
    const double full = rate_excursion(p, fstar).value;
    const double gap2 = std::abs(full - dyadic_rate(p, fstar, 1 << 11).value);
    check(gap2 < 1e-3, "dyadic convergence (analytic area maximizer)",
          "gap " + fmt(gap2) + " at 2^11, full " + fmt(full));

    check(std::abs(rate_excursion(p, ramp).value - 27.0 / 256.0) < 1e-12,
          "ramp rate exact", "27/256");
    check(finite_dim_rate_excursion(p, Subdivision({0.5}), {1.0}).value == 27.0 / 32.0,
          "finite-dim excursion value", "27/32");
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
    std::puts("criterion 3: variational oracles (n = 1024)");
    for (double alpha : {4.0 / 3.0, 1.5}) {
        auto p = make_params(alpha);
        const int n = 1024;
        auto area = gamma_numeric(p, GridFunctional::area(), n);
        const double ga = gamma_area(p);
        check(std::abs(area.gamma - ga) < 1e-3, "gamma area alpha=" + fmt(alpha),
              "numeric " + fmt(area.gamma) + " analytic " + fmt(ga));
        check(area.gamma <= ga + 1e-6, "Hoelder cap alpha=" + fmt(alpha),
              "numeric - analytic = " + fmt(area.gamma - ga));
        check(area.constraint_residual < 1e-8, "area feasibility alpha=" + fmt(alpha),
              "residual " + fmt(area.constraint_residual));
        double l2 = 0.0;
        const double cc = std::pow(alpha + 1.0, 1.0 / p.alpha_prime) / alpha;
        for (int i = 0; i <= n; ++i) {
            const double fs = cc * (1.0 - std::pow(static_cast<double>(i) / n, alpha));
            l2 += (area.maximizer[i] - fs) * (area.maximizer[i] - fs) / n;
        }
        l2 = std::sqrt(l2);
        check(l2 < 1e-2, "area maximizer L2 alpha=" + fmt(alpha), "distance " + fmt(l2));

        auto sup = gamma_numeric(p, GridFunctional::sup(), n);
        check(std::abs(sup.gamma - 1.0) < 1e-3, "gamma sup alpha=" + fmt(alpha),
              "numeric " + fmt(sup.gamma));
        double l2s = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double fs = 1.0 - static_cast<double>(i) / n;
            l2s += (sup.maximizer[i] - fs) * (sup.maximizer[i] - fs) / n;
        }
        l2s = std::sqrt(l2s);
        check(l2s < 1e-2, "sup maximizer L2 alpha=" + fmt(alpha), "distance " + fmt(l2s));
        check(sup.constraint_residual < 1e-8, "sup feasibility alpha=" + fmt(alpha),
              "residual " + fmt(sup.constraint_residual));
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    std::puts("criterion 4: M1' metric suite");
    const double tol = 1e-4;
    auto f0 = CadlagPath::indicator(0.3, 0.6);
    check(m1_distance(f0, f0, tol) == 0.0, "dist(f,f) = 0", "identity");

    auto a = CadlagPath::indicator(0.1, 1.0);
    auto b = CadlagPath::indicator(0.0, 1.0);
    const double d01 = m1_distance(a, b, tol);
    check(std::abs(d01 - 0.1) <= 1e-3, "dist(1_[0.1,1], 1_[0,1])", "got " + fmt(d01));

    for (double cval : {0.25, 0.5}) {
        auto zc = CadlagPath::step_path({0.0, 1.0}, {cval, cval});
        const double d = m1_distance(CadlagPath::zero(), zc, tol);
        check(std::abs(d - cval) <= 1e-3, "dist(0, const " + fmt(cval) + ")", "got " + fmt(d));
    }

    RngStream rng(555);
    bool sym = true, tri = true;
    for (int rep = 0; rep < 200; ++rep) {
        auto mk = [&]() {
            std::vector<double> t{0.0}, v{std::floor(rng.uniform01() * 5) - 2.0};
            for (int i = 0; i < 4; ++i) t.push_back(rng.uniform01());
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
            if (t.back() != 1.0) t.push_back(1.0);
            while (v.size() < t.size()) v.push_back(std::floor(rng.uniform01() * 7) - 3.0);
            return CadlagPath::step_path(t, v);
        };
        auto f = mk(), g = mk(), h = mk();
        const double dfg = m1_distance(f, g, tol);
        if (dfg != m1_distance(g, f, tol)) sym = false;
        if (m1_distance(f, h, tol) > dfg + m1_distance(g, h, tol) + 2 * tol) tri = false;
    }
    check(sym, "symmetry (200 random triples)", "exact");
    check(tri, "triangle inequality (200 random triples)", "within 2 tol");

    bool conv = true;
    double prev = 1e9;
    for (int n : {4, 8, 32, 128, 1024}) {
        const double d = m1_distance(CadlagPath::indicator(1.0 / n, 1.0), b, tol);
        if (d > prev + tol || d > 1.0 / n + 2 * tol) conv = false;
        prev = d;
    }
    check(conv, "convergent family dist(1_[1/n,1], 1_[0,1]) -> 0", "last " + fmt(prev));

    bool sep = true;
    for (int n : {4, 16, 64, 256}) {
        const double d = m1_distance(CadlagPath::indicator(0.0, 1.0 / n),
                                     CadlagPath::indicator(0.0, 1.0 / (4 * n)), tol);
        if (d < 0.3) sep = false;
    }
    check(sep, "non-convergent family stays separated", ">= 0.3 pairwise");

    bool wm_zero = true;
    for (int n : {4, 32, 256})
        if (m_oscillation(CadlagPath::indicator(1.0 / n, 1.0), 0.5) != 0.0) wm_zero = false;
    check(wm_zero, "w_M vanishes along the convergent family", "");
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
    std::puts("criterion 5: sampler validation");
    for (double alpha : {4.0 / 3.0, 1.5}) {
        auto p = make_params(alpha);
        for (double a : {0.0, -1.0, 1.0}) {
            auto checks = bridge_marginal_checks(p, a, 100000, 901, 0.02);
            for (const auto& c : checks)
                check(c.pass, "bridge marginal KS " + c.detail, "ks " + fmt(c.stat));
        }
    }
    auto p43 = make_params(4.0 / 3.0);
    auto inv = skeleton_invariant_checks(p43, -1.0, 100000, 256, 902);
    for (const auto& c : inv) check(c.pass, c.name, c.detail);

    auto cond = excursion_conditional_checks(p43, 100000, 512, 903, 0.03);
    check(cond[0].pass, "excursion conditional KS (window-weighted)",
          "ks " + fmt(cond[0].stat) + "  " + cond[0].detail);
    std::printf("  [info] pinned-x=1 variant ks %s\n", fmt(cond[1].stat).c_str());
}

// ----------------------------------------------------- criteria 6 and 7
struct TailTarget {
    const char* label;
    TailFunctional functional;
    TailKind kind;
    std::vector<double> thresholds;
};

void criterion6_7() {
    std::puts("criterion 6: tail-slope reproduction (alpha=4/3, N=1e6, n=2^10 vs 2^11)");
    auto p = make_params(4.0 / 3.0);
    const std::int64_t N = 1000000;

    // pilot-calibrated thresholds: shallow anchor with estimate > 1e-3 a
    // priori, the rest log-spaced down to the 30-hit depth at N=1e6
    std::vector<TailTarget> targets{
        {"area", TailFunctional::area, TailKind::excursion,
         {1.26, 1.31, 1.36, 1.41, 1.45, 1.49}},
        {"excursion sup", TailFunctional::sup, TailKind::excursion,
         {2.41, 2.52, 2.62, 2.71, 2.79, 2.87}},
        {"bridge sup", TailFunctional::sup, TailKind::bridge_sup,
         {2.01, 2.12, 2.22, 2.32, 2.41, 2.50}},
    };

    FunctionalSamples ex1 = collect_excursion_functionals(p, N, 1024, 70001);
    FunctionalSamples ex2 = collect_excursion_functionals(p, N, 2048, 70002);
    std::vector<double> br1 = collect_bridge_sup(p, N, 1024, 70003);
    std::vector<double> br2 = collect_bridge_sup(p, N, 2048, 70004);

    for (const auto& tgt : targets) {
        const double theory = theory_tail_slope(p, tgt.functional, tgt.kind);
        const std::vector<double>* v1;
        const std::vector<double>* v2;
        if (tgt.kind == TailKind::bridge_sup) {
            v1 = &br1;
            v2 = &br2;
        } else if (tgt.functional == TailFunctional::area) {
            v1 = &ex1.area;
            v2 = &ex2.area;
        } else {
            v1 = &ex1.sup;
            v2 = &ex2.sup;
        }
        auto te1 = tail_from_values(*v1, tgt.thresholds);
        auto te2 = tail_from_values(*v2, tgt.thresholds);
        auto fit1 = fit_ldp_slope(p, te1, theory);
        auto fit2 = fit_ldp_slope(p, te2, theory);
        check(fit1.relative_deviation <= 0.30,
              std::string("slope within 30%: ") + tgt.label,
              "slope " + fmt(fit1.slope) + " theory " + fmt(theory) + " dev " +
                  fmt(100 * fit1.relative_deviation) + "% (n=1024)");

        // deviation must shrink when the window shifts upward
        std::vector<double> upper(tgt.thresholds.begin() + tgt.thresholds.size() / 2,
                                  tgt.thresholds.end());
        auto fit_up = fit_ldp_slope(p, tail_from_values(*v1, upper), theory);
        check(fit_up.relative_deviation < fit1.relative_deviation,
              std::string("upward-window deviation shrinks: ") + tgt.label,
              "full " + fmt(100 * fit1.relative_deviation) + "% -> upper " +
                  fmt(100 * fit_up.relative_deviation) + "%");

        const double diff = std::abs(fit1.slope - fit2.slope);
        const double band = 3.0 * std::sqrt(fit1.slope_se * fit1.slope_se +
                                            fit2.slope_se * fit2.slope_se);
        check(diff < band, std::string("two-grid stability: ") + tgt.label,
              "|slope(2^10)-slope(2^11)| = " + fmt(diff) + " < " + fmt(band));
    }

    std::puts("criterion 7: moment growth (k = 10..12, shared samples)");
    {
        auto mg_sup = moments_from_values(p, ex1.sup, 1.0, 12);
        auto mg_area = moments_from_values(p, ex1.area, gamma_area(p), 12);
        for (const auto* mg : {&mg_sup, &mg_area}) {
            const char* nm = mg == &mg_sup ? "sup" : "area";
            for (int k = 10; k <= 12; ++k) {
                const auto& row = mg->rows[k - 1];
                const double gap = std::abs(row.ratio - mg->limit);
                check(gap <= row.se && !row.flagged,
                      std::string("moment ratio within jackknife bars: ") + nm +
                          " k=" + std::to_string(k),
                      "ratio " + fmt(row.ratio) + " +- " + fmt(row.se) + " limit " +
                          fmt(mg->limit) + " gap/se " + fmt(gap / std::max(row.se, 1e-12)));
            }
        }
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
    std::puts("criterion 8: tightness diagnostics and two-jump probe");
    auto p = make_params(4.0 / 3.0);
    auto t = tightness_moment_check(p, 200000, 80001);
    check(t.form_pass, "Lemma-form fit: gap coefficient within [0.5,2] of lambda^alpha",
          "ratio " + fmt(t.gap_slope_ratio) + " fitted log c " + fmt(t.fitted_log_c));
    std::string probs;
    for (double q : t.endpoint_probs) probs += fmt(q) + " ";
    check(t.endpoint_pass, "near-endpoint sup probability decreasing in delta", probs);

    auto probe = j1_two_jump_probe(p, 1.0 / 16.0, {1.0, 1.25, 1.5, 2.0}, 1000000, 512, 80002);
    for (const auto& row : probe.rows)
        std::printf("  [info] probe eps=%.3g hits=%lld p=%.3g eps^a'logp=%.4g resid=%.3g%s\n",
                    row.eps, static_cast<long long>(row.hits), row.p_hat, row.q_scaled,
                    row.residual, row.trusted ? "" : " (untrusted: <10 hits)");
    std::printf("  [info] floor(display)=%.4g floor(limit delta->0)=%.4g fitted logC=%.4g\n",
                probe.floor_display, probe.floor_limit, probe.fitted_log_c);
    if (probe.soft_warn)
        check(true, "two-jump probe (soft)", "fewer than 2 trusted entries; warning only");
    else
        check(probe.pass, "two-jump probe floor consistency (fitted C)",
              "residuals above -(1.5 + 3 CI) nats");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <criterion 1..8>\n", argv[0]);
        return 2;
    }
    const int c = std::atoi(argv[1]);
    const auto t0 = std::chrono::steady_clock::now();
    switch (c) {
        case 1: criterion1(); break;
        case 2: criterion2(); break;
        case 3: criterion3(); break;
        case 4: criterion4(); break;
        case 5: criterion5(); break;
        case 6:
        case 7: criterion6_7(); break;
        case 8: criterion8(); break;
        default:
            std::fprintf(stderr, "unknown criterion %d\n", c);
            return 2;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s (%d failing sub-checks, %.1f s)\n", c,
                g_fail == 0 ? "PASS" : "FAIL", g_fail, secs);
    return g_fail == 0 ? 0 : 1;
}
