#pragma once

#include <vector>

#include "stablex/path_space.hpp"
#include "stablex/stable_math.hpp"

namespace stablex {

enum class RateReason {
    none,
    negative_values,
    endpoint_mismatch,
    unbounded_variation_proxy,
    singular_down_part,
};

/// Extended nonnegative value; reason is `none` iff the value is finite.
struct RateValue {
    double value;
    RateReason reason;

    bool finite() const { return reason == RateReason::none; }
    static RateValue finite_value(double v) { return {v, RateReason::none}; }
    static RateValue infinite(RateReason r);
};

const char* to_string(RateReason r);

/// Strictly increasing interior times of a finite subdivision of [0,1].
struct Subdivision {
    std::vector<double> interior;

    explicit Subdivision(std::vector<double> times);
};

/// I_ex(f) = c_alpha int (f_down')^{alpha'} for nonnegative BV paths with
/// f(1) = 0 and absolutely continuous down part; +inf otherwise. Any down
/// jump is a singular down component. Exact sum over linear segments.
RateValue rate_excursion(const StableParams& params, const CadlagPath& path);

/// Bridge rate: c_alpha (int |f_down'|^{alpha'} - (a_-)^{alpha'}) for f(1) = a.
RateValue rate_bridge(const StableParams& params, const CadlagPath& path, double a);

/// J_sigma on excursion marginals, convention x_{n+1} = 0, t_{n+1} = 1; no
/// cost on the entrance interval [0, t_1].
RateValue finite_dim_rate_excursion(const StableParams& params, const Subdivision& sigma,
                                    const std::vector<double>& values);

/// Bridge marginal rate J_br,a with entrance and exit terms and the
/// -(a_-)^{alpha'} offset.
RateValue finite_dim_rate_bridge(const StableParams& params, const Subdivision& sigma,
                                 const std::vector<double>& values, double a);

/// finite_dim_rate_excursion on the uniform n-subdivision, values read from
/// the path by right-continuous evaluation. n = 1 has no interior point and
/// yields 0.
RateValue dyadic_rate(const StableParams& params, const CadlagPath& path, int n);

/// J_Phi(x) = c_alpha (x / gamma)^{alpha'}.
double functional_rate(const StableParams& params, double x, double gamma);

}  // namespace stablex
