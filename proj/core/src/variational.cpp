#include "stablex/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stablex/rng.hpp"

namespace stablex {

GridFunctional::GridFunctional(std::function<double(std::span<const double>)> eval, bool monotone,
                               std::string name)
    : eval_(std::move(eval)), monotone_(monotone), name_(std::move(name)) {
    if (!eval_) throw std::invalid_argument("GridFunctional: empty callback");
    // registration probes: positive homogeneity and non-degeneracy on K_ex
    RngStream rng(0xF00DF00Dull);
    const int n = 96;
    for (int probe = 0; probe < 8; ++probe) {
        std::vector<double> f(n + 1);
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            f[i] = (1.0 - t) * (0.25 + rng.uniform01());
        }
        f[n] = 0.0;
        const double lam = 0.25 + 3.0 * rng.uniform01();
        std::vector<double> fl(f);
        for (auto& v : fl) v *= lam;
        const double a = eval_(fl);
        const double b = lam * eval_(f);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(b)))
            throw std::invalid_argument("GridFunctional '" + name_ +
                                        "': positive homogeneity probe failed");
    }
    std::vector<double> ramp(n + 1);
    for (int i = 0; i <= n; ++i) ramp[i] = 1.0 - static_cast<double>(i) / n;
    if (!(eval_(ramp) > 0.0))
        throw std::invalid_argument("GridFunctional '" + name_ +
                                    "': identically zero on K_ex (probe f = 1-t)");
}

GridFunctional GridFunctional::area() {
    return GridFunctional(
        [](std::span<const double> f) {
            double s = 0.0;
            for (size_t j = 1; j < f.size(); ++j) s += f[j];
            return s / (f.size() - 1);
        },
        true, "area");
}

GridFunctional GridFunctional::sup() {
    return GridFunctional(
        [](std::span<const double> f) {
            double m = 0.0;
            for (double v : f) m = std::max(m, v);
            return m;
        },
        true, "sup");
}

double gamma_area(const StableParams& params) {
    return std::pow(params.alpha + 1.0, -1.0 / params.alpha);
}

double gamma_sup(const StableParams&) { return 1.0; }

double gamma_bridge_sup(const StableParams&) { return 1.0; }

namespace detail {

void project_ball(std::vector<double>& g, double ap, double dx) {
    double norm = 0.0;
    for (auto& v : g) {
        if (v < 0.0) v = 0.0;
        norm += std::pow(v, ap) * dx;
    }
    if (norm <= 1.0) return;
    // KKT: x_i solves x + kappa x^{ap-1} = g_i; kappa >= 0 by bisection on the
    // norm constraint, per-coordinate Newton inside.
    auto solve_x = [&](double gi, double kappa) {
        if (gi <= 0.0) return 0.0;
        double x = gi;
        for (int it = 0; it < 60; ++it) {
            const double xp = std::pow(x, ap - 2.0);
            const double fx = x + kappa * xp * x - gi;
            const double dfx = 1.0 + kappa * (ap - 1.0) * xp;
            double xn = x - fx / dfx;
            if (xn <= 0.0) xn = 0.5 * x;
            if (std::abs(xn - x) < 1e-15 * std::max(1.0, x)) {
                x = xn;
                break;
            }
            x = xn;
        }
        return x;
    };
    auto norm_at = [&](double kappa) {
        double s = 0.0;
        for (double v : g) {
            const double x = solve_x(v, kappa);
            s += std::pow(x, ap) * dx;
        }
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (norm_at(hi) > 1.0) hi *= 4.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (norm_at(mid) > 1.0 ? lo : hi) = mid;
    }
    for (auto& v : g) v = solve_x(v, hi);
}

std::vector<double> profile_from_derivative(const std::vector<double>& g, double dx) {
    std::vector<double> f(g.size() + 1, 0.0);
    for (size_t j = g.size(); j-- > 0;) f[j] = f[j + 1] + g[j] * dx;
    return f;
}

}  // namespace detail

VariationalResult gamma_numeric(const StableParams& params, const GridFunctional& phi, int n) {
    if (n < 64) throw std::invalid_argument("gamma_numeric: n must be >= 64");
    if (!phi.monotone())
        throw std::invalid_argument("gamma_numeric: unsupported functional (not monotone)");
    const double ap = params.alpha_prime;
    const double dx = 1.0 / n;

    auto value_of = [&](const std::vector<double>& g) {
        const auto f = detail::profile_from_derivative(g, dx);
        return phi(std::span<const double>(f));
    };

    VariationalResult best;
    best.gamma = -1.0;
    for (int start = 0; start < 8; ++start) {
        RngStream rng(0xA11CE000ull + start);
        std::vector<double> g(n);
        for (auto& v : g) v = -std::log(rng.uniform01());
        detail::project_ball(g, ap, dx);
        double norm = 0.0;
        for (double v : g) norm += std::pow(v, ap) * dx;
        if (norm < 1.0 && norm > 0.0) {
            const double s = std::pow(1.0 / norm, 1.0 / ap);
            for (auto& v : g) v *= s;  // start on the sphere
        }
        double val = value_of(g);
        int it = 0, stagnant = 0;
        std::vector<double> grad(n), cand(n);
        for (; it < 10000 && stagnant < 10; ++it) {
            const double h = 1e-7;
            const auto f0 = detail::profile_from_derivative(g, dx);
            const double base = phi(std::span<const double>(f0));
            // forward differences; the profile map is linear so refresh per i
            for (int i = 0; i < n; ++i) {
                std::vector<double>& gi = cand;
                gi = g;
                gi[i] += h;
                const auto fi = detail::profile_from_derivative(gi, dx);
                grad[i] = (phi(std::span<const double>(fi)) - base) / h;
            }
            double gn = 0.0, gg = 0.0;
            for (int i = 0; i < n; ++i) {
                gn += grad[i] * grad[i];
                gg += g[i] * g[i];
            }
            gn = std::sqrt(gn);
            if (gn < 1e-14) break;
            double step = std::max(1.0, std::sqrt(gg)) / gn;
            bool accepted = false;
            double rel = 0.0;
            for (int bt = 0; bt < 50; ++bt) {
                cand = g;
                for (int i = 0; i < n; ++i) cand[i] += step * grad[i];
                detail::project_ball(cand, ap, dx);
                const double vc = value_of(cand);
                if (vc > val) {
                    rel = (vc - val) / std::max(std::abs(val), 1e-30);
                    g.swap(cand);
                    val = vc;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            stagnant = (!accepted || rel < 1e-9) ? stagnant + 1 : 0;
        }
        if (val > best.gamma) {
            best.gamma = val;
            best.maximizer = detail::profile_from_derivative(g, dx);
            best.iterations = it;
            double norm2 = 0.0;
            for (double v : g) norm2 += std::pow(v, ap) * dx;
            best.constraint_residual = std::max(0.0, norm2 - 1.0);
        }
    }
    return best;
}

}  // namespace stablex
