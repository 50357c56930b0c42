#pragma once

#include <iosfwd>
#include <vector>

#include "stablex/quadrature.hpp"

namespace stablex {

/// Constants bundle for the spectrally positive alpha-stable process with
/// E[exp(-lambda L_t)] = exp(t lambda^alpha).
struct StableParams {
    double alpha;        // stability index, in (1,2)
    double alpha_prime;  // conjugate exponent alpha/(alpha-1)
    double c_alpha;      // left-tail constant (alpha-1)/alpha^alpha_prime
    double C_alpha;      // right-tail constant -1/Gamma(1-alpha)
};

/// Throws std::domain_error outside the open interval (1,2).
StableParams make_params(double alpha);

/// Transition density p_t(x). Computed as t^{-1/alpha} p_1(t^{-1/alpha} x);
/// p_1 is evaluated through a non-oscillatory integral representation on each
/// half-line. Throws std::runtime_error on quadrature non-convergence.
double density(const StableParams& params, double t, double x, const QuadratureSpec& quad = {});

/// int e^{-lambda x} p_1(x) dx; equals exp(lambda^alpha) up to quadrature error.
double laplace_transform(const StableParams& params, double lambda, const QuadratureSpec& quad = {});

/// First-hitting-time density of 0 from x > 0: q_x(t) = (x/t) p_t(-x).
double hitting_density(const StableParams& params, double x, double t, const QuadratureSpec& quad = {});

/// Killed transition density p_t^{(0,inf)}(x,y) = p_t(y-x) - int_0^t q_x(s) p_{t-s}(y) ds.
/// Values in [-1e-10, 0) are clamped to 0; anything below -1e-10 throws.
double killed_transition(const StableParams& params, double t, double x, double y,
                         const QuadratureSpec& quad = {});

/// Tabulated pdf/cdf on a uniform grid, for inverse-CDF sampling and export.
/// With `require_coverage` the raw trapezoid mass must land within 1e-4 of 1
/// (the sampling contract); pass false to tabulate a partial window for
/// inspection, leaving the cdf column as the partial integral.
class DensityTable {
  public:
    static DensityTable build(const StableParams& params, double t, double xmin, double xmax,
                              int n_points, const QuadratureSpec& quad = {},
                              bool require_coverage = true);

    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& pdf() const { return pdf_; }
    const std::vector<double>& cdf() const { return cdf_; }

    double cdf_at(double x) const;
    double quantile(double u) const;

    /// CSV with header row `x,pdf,cdf`; 17 significant digits.
    void write_csv(std::ostream& os) const;
    static DensityTable read_csv(std::istream& is);

  private:
    DensityTable() = default;
    std::vector<double> x_, pdf_, cdf_;
};

namespace detail {
/// Scale sigma with L_1 = sigma * Z, Z standard S(alpha, beta=1) in the S1
/// parameterization; sigma = |cos(pi alpha/2)|^{1/alpha}.
double s1_scale(double alpha);
/// Density of L_1 at x (the t=1 special case `density` delegates to).
double p1(const StableParams& params, double x, const QuadratureSpec& quad);
}  // namespace detail

}  // namespace stablex
