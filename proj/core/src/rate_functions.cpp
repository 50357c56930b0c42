#include "stablex/rate_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stablex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum of c * s * ((drop)_+/s)^{ap} terms over consecutive (t, x) pairs.
double chain_cost(const StableParams& p, const std::vector<double>& t,
                  const std::vector<double>& x) {
    double sum = 0.0;
    for (size_t i = 0; i + 1 < t.size(); ++i) {
        const double s = t[i + 1] - t[i];
        const double drop = x[i] - x[i + 1];
        if (drop > 0.0) sum += s * std::pow(drop / s, p.alpha_prime);
    }
    return p.c_alpha * sum;
}

// c_alpha int |f_down'|^{alpha'} as an exact segment sum; +inf (by reason)
// when the down part has a jump. No sign or endpoint constraints here.
RateValue down_energy(const StableParams& p, const CadlagPath& f) {
    const auto& t = f.times();
    const auto& lf = f.lefts();
    const auto& rt = f.rights();
    // jump from f(0-) = 0; downward means a singular down component
    if (rt[0] < 0.0) return RateValue::infinite(RateReason::singular_down_part);
    double sum = 0.0;
    for (size_t i = 1; i < t.size(); ++i) {
        if (rt[i] < lf[i]) return RateValue::infinite(RateReason::singular_down_part);
        const double seg = lf[i] - rt[i - 1];
        if (seg < 0.0) {
            const double s = t[i] - t[i - 1];
            sum += s * std::pow(-seg / s, p.alpha_prime);
        }
    }
    return RateValue::finite_value(p.c_alpha * sum);
}

}  // namespace

RateValue RateValue::infinite(RateReason r) {
    if (r == RateReason::none) throw std::invalid_argument("RateValue: infinite needs a reason");
    return {kInf, r};
}

const char* to_string(RateReason r) {
    switch (r) {
        case RateReason::none: return "none";
        case RateReason::negative_values: return "negative-values";
        case RateReason::endpoint_mismatch: return "endpoint-mismatch";
        case RateReason::unbounded_variation_proxy: return "unbounded-variation-proxy";
        case RateReason::singular_down_part: return "singular-down-part";
    }
    return "?";
}

Subdivision::Subdivision(std::vector<double> times) : interior(std::move(times)) {
    if (interior.empty()) throw std::invalid_argument("Subdivision: interior times required");
    for (size_t i = 0; i < interior.size(); ++i) {
        if (!(interior[i] > 0.0) || !(interior[i] < 1.0))
            throw std::invalid_argument("Subdivision: times must lie strictly inside (0,1)");
        if (i > 0 && !(interior[i] > interior[i - 1]))
            throw std::invalid_argument("Subdivision: times must be strictly increasing");
    }
}

RateValue rate_excursion(const StableParams& params, const CadlagPath& path) {
    if (path.min_value() < 0.0) return RateValue::infinite(RateReason::negative_values);
    if (path.end() != 0.0) return RateValue::infinite(RateReason::endpoint_mismatch);
    return down_energy(params, path);
}

RateValue rate_bridge(const StableParams& params, const CadlagPath& path, double a) {
    if (path.end() != a) return RateValue::infinite(RateReason::endpoint_mismatch);
    const RateValue e = down_energy(params, path);
    if (!e.finite()) return e;
    const double am = std::max(-a, 0.0);
    return RateValue::finite_value(e.value - params.c_alpha * std::pow(am, params.alpha_prime));
}

RateValue finite_dim_rate_excursion(const StableParams& params, const Subdivision& sigma,
                                    const std::vector<double>& values) {
    if (values.size() != sigma.interior.size())
        throw std::invalid_argument("finite_dim_rate_excursion: values/sigma size mismatch");
    for (double v : values)
        if (v < 0.0) return RateValue::infinite(RateReason::negative_values);
    std::vector<double> t(sigma.interior), x(values);
    t.push_back(1.0);
    x.push_back(0.0);
    return RateValue::finite_value(chain_cost(params, t, x));
}

RateValue finite_dim_rate_bridge(const StableParams& params, const Subdivision& sigma,
                                 const std::vector<double>& values, double a) {
    if (values.size() != sigma.interior.size())
        throw std::invalid_argument("finite_dim_rate_bridge: values/sigma size mismatch");
    std::vector<double> t{0.0};
    std::vector<double> x{0.0};
    t.insert(t.end(), sigma.interior.begin(), sigma.interior.end());
    x.insert(x.end(), values.begin(), values.end());
    t.push_back(1.0);
    x.push_back(a);
    const double am = std::max(-a, 0.0);
    return RateValue::finite_value(chain_cost(params, t, x) -
                                   params.c_alpha * std::pow(am, params.alpha_prime));
}

RateValue dyadic_rate(const StableParams& params, const CadlagPath& path, int n) {
    if (n < 1) throw std::invalid_argument("dyadic_rate: n must be >= 1");
    std::vector<double> t, x;
    t.reserve(n + 1);
    x.reserve(n + 1);
    for (int i = 1; i < n; ++i) {
        t.push_back(static_cast<double>(i) / n);
        x.push_back(path.value(t.back()));
    }
    for (double v : x)
        if (v < 0.0) return RateValue::infinite(RateReason::negative_values);
    t.push_back(1.0);
    x.push_back(0.0);
    return RateValue::finite_value(chain_cost(params, t, x));
}

double functional_rate(const StableParams& params, double x, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("functional_rate: gamma must be > 0");
    if (x < 0.0) throw std::domain_error("functional_rate: x must be >= 0");
    return params.c_alpha * std::pow(x / gamma, params.alpha_prime);
}

}  // namespace stablex
