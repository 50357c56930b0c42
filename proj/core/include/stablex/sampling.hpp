#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "stablex/rng.hpp"
#include "stablex/stable_math.hpp"

namespace stablex {

enum class SkeletonKind { free, bridge, excursion };

/// Process values on the uniform grid i/n, i = 0..n, with provenance.
struct PathSkeleton {
    int n = 0;
    std::vector<double> values;  // n+1 entries
    SkeletonKind kind = SkeletonKind::free;
    double bridge_a = 0.0;  // endpoint for kind == bridge
    double alpha = 0.0;
    std::uint64_t seed = 0;

    double at_time(double t) const;  // value at the nearest grid index
};

struct SamplerConfig {
    int density_table_points = 4096;  // per-column resolution of the midpoint table
    int max_table_rebuilds = 4;       // range-doubling cap when building columns

    void validate() const;
};

/// One draw from the law of L_t (Chambers-Mallows-Stuck, totally skewed).
double stable_increment(const StableParams& params, double t, RngStream& rng);

/// Shared tables for fast bridge bisection: a dense p_1 interpolation and a
/// quantile surface for the scaled midpoint conditional ~ p_1(v) p_1(d - v).
/// Immutable after construction; share freely across threads.
class MidpointSampler {
  public:
    MidpointSampler(const StableParams& params, const SamplerConfig& config);

    /// Quantile of the scaled midpoint conditional with endpoint gap dtilde.
    double draw(double u, double dtilde) const;

    /// Fast p_1 lookup (linear interpolation, analytic tails).
    double p1(double x) const;
    double p1_interquartile_width() const { return iqw_; }

    const StableParams& params() const { return params_; }

  private:
    void build_master();
    void build_quantiles();
    std::vector<double> column_quantiles(double dtilde) const;

    StableParams params_;
    SamplerConfig config_;
    // master p1 table
    std::vector<double> mx_, mp_;
    double tail_cut_;
    double iqw_;
    // quantile surface
    std::vector<double> u_nodes_;
    std::vector<double> q_;  // (J+1) x u_nodes, asinh-transformed
    int J_;
    double asinh_span_;
};

/// Caches one MidpointSampler per (alpha, config); construction is expensive.
const MidpointSampler& midpoint_sampler(const StableParams& params, const SamplerConfig& config);

/// Exact dyadic skeleton of the bridge from 0 to a via recursive bisection.
PathSkeleton sample_bridge(const StableParams& params, double a, int n, RngStream& rng,
                           const SamplerConfig& config = {});

/// Vervaat shift of the zero bridge: argmin-rooted cyclic shift, re-based to 0.
PathSkeleton sample_excursion(const StableParams& params, int n, RngStream& rng,
                              const SamplerConfig& config = {});

/// Cumulative sum of iid stable increments of span 1/n.
PathSkeleton sample_free_path(const StableParams& params, int n, RngStream& rng);

/// Left-endpoint Riemann sum of the skeleton values.
double functional_area(const PathSkeleton& skeleton);

/// Maximum of the grid values (underestimates the continuum supremum).
double functional_sup(const PathSkeleton& skeleton);

/// Batch CSV: `# alpha=..., n=..., seed=..., kind=...` then one row of n+1
/// values per sample at 17 significant digits.
void write_skeleton_batch(std::ostream& os, const std::vector<PathSkeleton>& batch);
std::vector<PathSkeleton> read_skeleton_batch(std::istream& is);

}  // namespace stablex
