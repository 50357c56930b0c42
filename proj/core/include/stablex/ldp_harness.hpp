#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stablex/sampling.hpp"
#include "stablex/stats.hpp"

namespace stablex {

enum class TailFunctional { area, sup };
enum class TailKind { excursion, bridge_sup };

/// Monte Carlo tail-probability table with Wilson 95% intervals.
struct TailEstimate {
    std::vector<double> thresholds;
    std::vector<std::int64_t> hits;
    std::int64_t n_samples = 0;
    std::vector<double> estimate, wilson_lo, wilson_hi;
    std::vector<bool> usable;  // >= 30 hits enter the slope fit
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_se = 0.0;  // MC-propagated via the delta method
    double theory_slope = 0.0;
    double relative_deviation = 0.0;
    int points_used = 0;
};

/// Per-excursion functional values; area and sup share the same paths.
struct FunctionalSamples {
    std::vector<double> area, sup;
};

FunctionalSamples collect_excursion_functionals(const StableParams& params, std::int64_t n_samples,
                                                int n, std::uint64_t seed,
                                                const SamplerConfig& config = {});
std::vector<double> collect_bridge_sup(const StableParams& params, std::int64_t n_samples, int n,
                                       std::uint64_t seed, const SamplerConfig& config = {});

TailEstimate tail_from_values(const std::vector<double>& values,
                              const std::vector<double>& thresholds);

TailEstimate estimate_tail(const StableParams& params, TailFunctional functional, TailKind kind,
                           const std::vector<double>& thresholds, std::int64_t n_samples, int n,
                           std::uint64_t seed, const SamplerConfig& config = {});

SlopeFit fit_ldp_slope(const StableParams& params, const TailEstimate& estimate,
                       double theory_slope);

/// Theory slopes of criterion 6: c_alpha (alpha+1)^{1/(alpha-1)} for the area,
/// c_alpha for the excursion and bridge supremum.
double theory_tail_slope(const StableParams& params, TailFunctional functional, TailKind kind);

struct MomentRow {
    int k = 0;
    double ratio = 0.0;  // E[X^k]^{1/k} / (k/e)^{1/alpha'}
    double se = 0.0;     // 50-batch jackknife
    bool flagged = false;
};
struct MomentGrowth {
    std::vector<MomentRow> rows;
    double limit = 0.0;  // alpha^{1/alpha} gamma_Phi
};

MomentGrowth moments_from_values(const StableParams& params, const std::vector<double>& values,
                                 double gamma_phi, int k_max);
MomentGrowth moment_growth(const StableParams& params, TailFunctional functional, int k_max,
                           std::int64_t n_samples, int n, std::uint64_t seed,
                           const SamplerConfig& config = {});

struct LaplaceGrowthRow {
    double t = 0.0;
    double ratio = 0.0;        // log E[e^{tX}] / t^alpha
    double top10_share = 0.0;  // heavy-weighting guard statistic
    bool trusted = false;
};
struct LaplaceGrowth {
    std::vector<LaplaceGrowthRow> rows;
    double limit = 0.0;  // gamma_Phi^alpha
};

LaplaceGrowth laplace_from_values(const StableParams& params, const std::vector<double>& values,
                                  double gamma_phi, const std::vector<double>& t_grid);
LaplaceGrowth laplace_growth(const StableParams& params, TailFunctional functional,
                             const std::vector<double>& t_grid, std::int64_t n_samples, int n,
                             std::uint64_t seed, const SamplerConfig& config = {});

/// Lemma 5.1 functional-form check on a 3x3x3 grid of triples in [0, 7/8]
/// plus the Lemma 5.2 near-endpoint monotonicity probe.
struct TightnessRow {
    double t1 = 0.0, t = 0.0, t2 = 0.0, lambda = 0.0;
    double log_mgf = 0.0;
};
struct TightnessResult {
    std::vector<TightnessRow> rows;
    double fitted_log_c = 0.0;      // least-squares c in log E <= log c + (t2-t1) lambda^alpha
    double max_residual = 0.0;      // worst positive residual against the bound, in nats
    double gap_slope_ratio = 0.0;   // diagnostic: regression slope / lambda^alpha at lambda = 2
    bool form_pass = false;         // residuals within the MC slack
    std::vector<double> endpoint_deltas;  // shrinking windows
    std::vector<double> endpoint_probs;   // P(sup over [1-delta,1] > gamma)
    bool endpoint_pass = false;
};

TightnessResult tightness_moment_check(const StableParams& params, std::int64_t n_samples,
                                       std::uint64_t seed, const SamplerConfig& config = {});

/// Two-jump probe of eq. (23): events L^ex_delta in [1/eps, 2/eps],
/// L^ex_{2 delta} in [3/eps, 4/eps].
struct ProbeRow {
    double eps = 0.0;
    std::int64_t hits = 0;
    double p_hat = 0.0;
    double q_scaled = 0.0;   // eps^{alpha'} log p_hat
    double residual = 0.0;   // vs fitted-C model, in nats
    bool trusted = false;    // >= 10 hits
};
struct ProbeResult {
    double delta = 0.0;
    double floor_display = 0.0;  // -c_alpha (3/(1-2 delta))^{alpha'}
    double floor_limit = 0.0;    // -3^{alpha'} c_alpha
    double fitted_log_c = 0.0;
    std::vector<ProbeRow> rows;
    bool pass = false;
    bool soft_warn = false;  // fewer than 2 trusted entries
};

ProbeResult j1_two_jump_probe(const StableParams& params, double delta,
                              const std::vector<double>& eps_grid, std::int64_t n_samples, int n,
                              std::uint64_t seed, const SamplerConfig& config = {});

}  // namespace stablex
