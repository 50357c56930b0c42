#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace stablex {

/// Tolerances and subdivision cap for the adaptive integrators.
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;     // accumulated local error estimates
    int subdivisions = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
inline constexpr double gk_wg[8] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
    0.0, 0.0, 0.0, 0.0};
inline constexpr double gk_wk[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};

template <class F>
inline double gk15(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = gk_wk[0] * f0;
    double g = gk_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk_nodes[i];
        const double fi = f(c + dx) + f(c - dx);
        k += gk_wk[i] * fi;
        g += gk_wg[i] * fi;
    }
    k *= h;
    g *= h;
    err = std::abs(k - g);
    // QUADPACK-style sharpening of the raw difference
    if (err > 0.0) err = err * std::min(1.0, std::pow(200.0 * err / std::max(std::abs(k), 1e-300), 1.5));
    return k;
}

}  // namespace detail

/// Adaptive bisection with a G7/K15 kernel. Never throws on non-convergence;
/// callers inspect `converged` and decide.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    QuadratureResult out;
    if (a == b) return out;

    struct Seg { double a, b, val, err; };
    double err0;
    double v0 = detail::gk15(f, a, b, err0);
    std::vector<Seg> heap{{a, b, v0, err0}};
    auto cmp = [](const Seg& s1, const Seg& s2) { return s1.err < s2.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    double total = v0, toterr = err0;
    int splits = 0;
    while (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions || heap.empty()) {
            out.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Seg s = heap.back();
        heap.pop_back();
        const double m = 0.5 * (s.a + s.b);
        double e1, e2;
        const double v1 = detail::gk15(f, s.a, m, e1);
        const double v2 = detail::gk15(f, m, s.b, e2);
        total += v1 + v2 - s.val;
        toterr += e1 + e2 - s.err;
        heap.push_back({s.a, m, v1, e1});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({m, s.b, v2, e2});
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++splits;
        if (toterr < 0) toterr = 0;  // float cancellation guard
    }
    out.value = total;
    out.error = toterr;
    out.subdivisions = splits;
    return out;
}

}  // namespace stablex
