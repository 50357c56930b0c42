#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stablex/sampling.hpp"

namespace stablex {

/// One statistical validation outcome. `stat` must stay below `threshold`
/// (or within it, for two-sided checks described in `detail`).
struct CheckResult {
    std::string name;
    double stat = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

/// KS of the sampled bridge marginal at t in {1/4, 1/2} against the
/// quadrature density p_t(x) p_{1-t}(a-x) / p_1(a).
std::vector<CheckResult> bridge_marginal_checks(const StableParams& params, double a,
                                                std::int64_t n_samples, std::uint64_t seed,
                                                double ks_threshold,
                                                const SamplerConfig& config = {});

/// Conditional-transition check: among excursions with value near 1 at t=1/2,
/// KS of the t=3/4 values against the killed-semigroup prediction
/// p^{(0,inf)}_{1/4}(x,y) q_y(1/4) / q_x(1/2), mixed over the observed window
/// x's. Also reports the x=1-pinned variant.
std::vector<CheckResult> excursion_conditional_checks(const StableParams& params,
                                                      std::int64_t target_conditioned, int n,
                                                      std::uint64_t seed, double ks_threshold,
                                                      const SamplerConfig& config = {});

/// Endpoint exactness and nonnegativity across a batch of skeletons.
std::vector<CheckResult> skeleton_invariant_checks(const StableParams& params, double a,
                                                   std::int64_t n_samples, int n,
                                                   std::uint64_t seed,
                                                   const SamplerConfig& config = {});

/// Two-sample KS between the zero-bridge marginals at t and 1-t.
CheckResult zero_bridge_reversal_check(const StableParams& params, std::int64_t n_samples,
                                       std::uint64_t seed, const SamplerConfig& config = {});

/// Empirical Laplace transform of stable_increment draws vs exp(t lambda^alpha),
/// within 3 standard errors at each lambda.
std::vector<CheckResult> increment_laplace_checks(const StableParams& params, double t,
                                                  const std::vector<double>& lambdas,
                                                  std::int64_t n_samples, std::uint64_t seed);

/// Two-sample KS between draws of L_t and t^{1/alpha} L_1.
CheckResult increment_scaling_check(const StableParams& params, double t,
                                    std::int64_t n_samples, std::uint64_t seed);

/// x^alpha P(L_1 > x) against C_alpha-consistent tail mass from quadrature.
CheckResult free_tail_check(const StableParams& params, double x, std::int64_t n_samples,
                            std::uint64_t seed, double rel_tolerance);

/// Entrance-law tail diagnostic: x^alpha P(L^ex_t > x t^{1/alpha}) over an x
/// grid; passes when the flattest adjacent-pair ratio is within the band.
struct EntranceTailRow {
    double x;
    double scaled_tail;  // x^alpha * P-hat
    std::int64_t hits;
};
struct EntranceTailResult {
    std::vector<EntranceTailRow> rows;
    double best_pair_ratio = 0.0;
    CheckResult check;
};
EntranceTailResult entrance_tail_diagnostic(const StableParams& params, double t, int n,
                                            const std::vector<double>& xs,
                                            std::int64_t n_samples, std::uint64_t seed,
                                            const SamplerConfig& config = {});

}  // namespace stablex
