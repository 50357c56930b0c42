#include "stablex/stable_math.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace stablex {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One half-line branch of the Zolotarev-type representation. In S0 coordinates
// the density at zeta + d (d > 0) is
//   f(d) = alpha d^{1/(alpha-1)} / (pi (alpha-1)) * int_{-theta0}^{pi/2} V e^{-d^{alpha'} V} dtheta,
// with V > 0 and monotone decreasing, so the integrand is non-oscillatory.
// beta = +1 covers x > 0 (heavy side), beta = -1 covers x < 0 (light side).
struct Branch {
    double alpha;
    double beta;
    double theta0;      // -theta0 is the lower integration endpoint
    double a0;          // alpha * theta0
    double log_cos_a0;  // log cos(alpha theta0), positive cosine for both branches

    Branch(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        theta0 = (beta > 0) ? kPi / 2 - kPi / alpha : kPi / alpha - kPi / 2;
        a0 = alpha * theta0;
        log_cos_a0 = std::log(std::cos(a0));
    }

    // log V(theta) on (-theta0, pi/2); +inf/-inf behavior handled by guards.
    double logV(double theta) const {
        const double u = kPi / 2 - theta;
        if (beta < 0 && u < 1e-7) {
            // cos(theta) and sin(alpha(theta0+theta)) vanish together; take limits
            return log_cos_a0 / (alpha - 1.0) - alpha / (alpha - 1.0) * std::log(alpha) +
                   std::log(alpha - 1.0);
        }
        const double s = std::sin(alpha * (theta0 + theta));
        const double c = std::cos(theta);
        const double c3 = std::cos(a0 + (alpha - 1.0) * theta);
        if (s <= 0.0 || c <= 0.0 || c3 <= 0.0) return std::numeric_limits<double>::infinity();
        return log_cos_a0 / (alpha - 1.0) + alpha / (alpha - 1.0) * (std::log(c) - std::log(s)) +
               std::log(c3) - std::log(c);
    }
};

double integrand(const Branch& br, double theta, double dd /* = d^{alpha'} */) {
    const double lv = br.logV(theta);
    if (!std::isfinite(lv)) return 0.0;
    const double e = lv - dd * std::exp(std::min(lv, 700.0));
    return (e < -745.0) ? 0.0 : std::exp(e);
}

// Density of the standard S1(alpha, beta=1) variable Z at z, via branch integrals.
double f_s1_std(const StableParams& params, double z, const QuadratureSpec& quad) {
    const double alpha = params.alpha;
    const double d = std::abs(z);
    if (d < 1e-9) {
        // exact S0 value at the shift point zeta
        const double zeta = -std::tan(kPi * alpha / 2);  // > 0 for beta = 1
        const double t0p = kPi / 2 - kPi / alpha;
        return std::tgamma(1.0 + 1.0 / alpha) * std::cos(t0p) /
               (kPi * std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha)));
    }
    Branch br(alpha, z > 0 ? 1.0 : -1.0);
    const double dd = std::pow(d, params.alpha_prime);

    // Light side underflows to an exact 0 well before double range runs out.
    if (br.beta < 0) {
        const double lvmin = br.logV(kPi / 2);
        if (dd * std::exp(lvmin) > 760.0) return 0.0;
    }

    const double lo = -br.theta0;
    const double hi = kPi / 2;
    // V is monotone decreasing, so locate level sets of dd*V by bisecting logV.
    auto level = [&](double target, double lo0, double hi0) {
        double ms = lo0 + 1e-13 * (hi - lo), me = hi0 - 1e-13 * (hi - lo);
        if (br.logV(me) >= target) return me;
        if (br.logV(ms) <= target) return ms;
        for (int it = 0; it < 200 && (me - ms) > 1e-15 * (hi - lo); ++it) {
            const double mid = 0.5 * (ms + me);
            (br.logV(mid) > target ? ms : me) = mid;
        }
        return 0.5 * (ms + me);
    };
    // mode of V e^{-dd V} (dd*V = 1), and the cut where dd*V = e^{60}-fold
    // negligible; without the cut, the boundary layer at the lower endpoint
    // is invisible to the first coarse pass when d is large
    const double split = level(-std::log(dd), lo, hi);
    const double cut = level(std::log(60.0) - std::log(dd), lo, split);

    auto f = [&](double th) { return integrand(br, th, dd); };
    QuadratureSpec half = quad;
    half.max_subdivisions = std::max(1, quad.max_subdivisions / 2);
    const auto r1 = integrate_adaptive(f, cut, split, half);
    const auto r2 = integrate_adaptive(f, split, hi, half);
    if (!r1.converged || !r2.converged) {
        std::ostringstream msg;
        msg << "stable density quadrature did not converge (error estimate "
            << (r1.error + r2.error) << " at z=" << z << ")";
        throw std::runtime_error(msg.str());
    }
    const double val = (r1.value + r2.value) * alpha * std::pow(d, 1.0 / (alpha - 1.0)) /
                       (kPi * (alpha - 1.0));
    return std::max(val, 0.0);
}

}  // namespace

namespace detail {

double s1_scale(double alpha) { return std::pow(-std::cos(kPi * alpha / 2), 1.0 / alpha); }

double p1(const StableParams& params, double x, const QuadratureSpec& quad) {
    const double sig = s1_scale(params.alpha);
    const double z = x / sig;
    // Far tails: asymptotic forms, cheaper and fully accurate there.
    if (x > 0 && z > 2.0e4)
        return params.alpha * params.C_alpha * std::pow(x, -params.alpha - 1.0);
    if (x < 0 && params.c_alpha * std::pow(-x, params.alpha_prime) > 760.0) return 0.0;
    return f_s1_std(params, z, quad) / sig;
}

}  // namespace detail

StableParams make_params(double alpha) {
    if (!(alpha > 1.0) || !(alpha < 2.0))
        throw std::domain_error("make_params: alpha must lie strictly in (1,2)");
    StableParams p;
    p.alpha = alpha;
    p.alpha_prime = alpha / (alpha - 1.0);
    p.c_alpha = (alpha - 1.0) / std::pow(alpha, p.alpha_prime);
    p.C_alpha = -1.0 / std::tgamma(1.0 - alpha);
    return p;
}

double density(const StableParams& params, double t, double x, const QuadratureSpec& quad) {
    if (!(t > 0.0)) throw std::domain_error("density: t must be > 0");
    const double s = std::pow(t, 1.0 / params.alpha);
    return detail::p1(params, x / s, quad) / s;
}

double laplace_transform(const StableParams& params, double lambda, const QuadratureSpec& quad) {
    if (!(lambda > 0.0)) throw std::domain_error("laplace_transform: lambda must be > 0");
    // Left cutoff: where c x^{a'} - lambda x dominates the target by ~46 nats.
    const double budget = std::pow(lambda, params.alpha) + 46.0;
    double xl = 4.0;
    while (params.c_alpha * std::pow(xl, params.alpha_prime) - lambda * xl < budget && xl < 1e4)
        xl *= 2.0;
    xl = std::min(xl, std::pow(766.0 / params.c_alpha, 1.0 / params.alpha_prime) + 2.0);
    const double xr = 46.0 / lambda + 10.0;

    auto f = [&](double x) { return std::exp(-lambda * x) * detail::p1(params, x, quad); };
    const auto r = integrate_adaptive(f, -xl, xr, quad);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "laplace_transform quadrature did not converge (error estimate " << r.error << ")";
        throw std::runtime_error(msg.str());
    }
    return r.value;
}

double hitting_density(const StableParams& params, double x, double t, const QuadratureSpec& quad) {
    if (!(x > 0.0) || !(t > 0.0)) throw std::domain_error("hitting_density: x and t must be > 0");
    return x / t * density(params, t, -x, quad);
}

double killed_transition(const StableParams& params, double t, double x, double y,
                         const QuadratureSpec& quad) {
    if (!(t > 0.0) || !(x > 0.0) || !(y > 0.0))
        throw std::domain_error("killed_transition: t, x, y must be > 0");
    const double free_part = density(params, t, y - x, quad);
    auto f = [&](double s) {
        if (s <= 0.0 || s >= t) return 0.0;
        return hitting_density(params, x, s, quad) * density(params, t - s, y, quad);
    };
    const auto r = integrate_adaptive(f, 0.0, t, quad);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "killed_transition quadrature did not converge (error estimate " << r.error << ")";
        throw std::runtime_error(msg.str());
    }
    const double val = free_part - r.value;
    if (val < -1e-10) {
        std::ostringstream msg;
        msg << "killed_transition: negative value " << val << " signals quadrature breakdown";
        throw std::runtime_error(msg.str());
    }
    return std::max(val, 0.0);
}

DensityTable DensityTable::build(const StableParams& params, double t, double xmin, double xmax,
                                 int n_points, const QuadratureSpec& quad,
                                 bool require_coverage) {
    if (n_points < 2) throw std::invalid_argument("DensityTable: need at least 2 points");
    if (!(xmax > xmin)) throw std::invalid_argument("DensityTable: xmax must exceed xmin");
    DensityTable tab;
    tab.x_.resize(n_points);
    tab.pdf_.resize(n_points);
    tab.cdf_.resize(n_points);
    const double h = (xmax - xmin) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        tab.x_[i] = xmin + i * h;
        tab.pdf_[i] = density(params, t, tab.x_[i], quad);
    }
    tab.cdf_[0] = 0.0;
    for (int i = 1; i < n_points; ++i)
        tab.cdf_[i] = tab.cdf_[i - 1] + 0.5 * (tab.pdf_[i] + tab.pdf_[i - 1]) * h;
    const double total = tab.cdf_.back();
    if (require_coverage && std::abs(total - 1.0) > 1e-4) {
        std::ostringstream msg;
        msg << "DensityTable: insufficient coverage, grid mass " << total
            << " differs from 1 by more than 1e-4";
        throw std::runtime_error(msg.str());
    }
    return tab;
}

double DensityTable::cdf_at(double x) const {
    if (x <= x_.front()) return cdf_.front();
    if (x >= x_.back()) return cdf_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const size_t i = it - x_.begin();
    const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return cdf_[i - 1] + w * (cdf_[i] - cdf_[i - 1]);
}

double DensityTable::quantile(double u) const {
    if (u <= cdf_.front()) return x_.front();
    if (u >= cdf_.back()) return x_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    size_t i = it - cdf_.begin();
    while (i > 0 && cdf_[i] == cdf_[i - 1]) --i;  // flat stretch
    if (i == 0) return x_.front();
    const double w = (u - cdf_[i - 1]) / (cdf_[i] - cdf_[i - 1]);
    return x_[i - 1] + w * (x_[i] - x_[i - 1]);
}

namespace {
std::string fmt17(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}
}  // namespace

void DensityTable::write_csv(std::ostream& os) const {
    os << "x,pdf,cdf\n";
    for (size_t i = 0; i < x_.size(); ++i)
        os << fmt17(x_[i]) << ',' << fmt17(pdf_[i]) << ',' << fmt17(cdf_[i]) << '\n';
}

DensityTable DensityTable::read_csv(std::istream& is) {
    DensityTable tab;
    std::string line;
    if (!std::getline(is, line) || line != "x,pdf,cdf")
        throw std::runtime_error("DensityTable: bad CSV header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double v[3];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 3; ++k) {
            auto res = std::from_chars(p, end, v[k]);
            if (res.ec != std::errc{}) throw std::runtime_error("DensityTable: bad CSV row");
            p = res.ptr;
            if (k < 2) {
                if (p == end || *p != ',') throw std::runtime_error("DensityTable: bad CSV row");
                ++p;
            }
        }
        tab.x_.push_back(v[0]);
        tab.pdf_.push_back(v[1]);
        tab.cdf_.push_back(v[2]);
    }
    return tab;
}

}  // namespace stablex
