#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stablex/stable_math.hpp"

namespace stablex {

/// Positive-homogeneous functional evaluated on a sampled path (n+1 uniform
/// grid values). Homogeneity is probed at registration; `monotone` declares
/// pointwise order preservation (required by gamma_numeric).
class GridFunctional {
  public:
    GridFunctional(std::function<double(std::span<const double>)> eval, bool monotone,
                   std::string name = "functional");

    double operator()(std::span<const double> f) const { return eval_(f); }
    bool monotone() const { return monotone_; }
    const std::string& name() const { return name_; }

    /// Area with the right-endpoint rule (pairs with the left-endpoint
    /// alpha'-norm so the discrete problem stays inside the continuum one).
    static GridFunctional area();
    static GridFunctional sup();

  private:
    std::function<double(std::span<const double>)> eval_;
    bool monotone_;
    std::string name_;
};

struct VariationalResult {
    double gamma = 0.0;
    std::vector<double> maximizer;  // n+1 grid values, nonnegative, ends at 0
    int iterations = 0;
    double constraint_residual = 0.0;
};

/// gamma_int = (alpha+1)^{-1/alpha}.
double gamma_area(const StableParams& params);
/// gamma_sup = 1.
double gamma_sup(const StableParams& params);
/// Bridge sup constant, also 1.
double gamma_bridge_sup(const StableParams& params);

/// Maximize phi over the discretized K_ex via projected gradient ascent on the
/// down-derivative g >= 0 under sum g^{alpha'} * dx <= 1 (exact Euclidean
/// projection), 8 fixed-seed multistarts, backtracking line search.
VariationalResult gamma_numeric(const StableParams& params, const GridFunctional& phi, int n);

namespace detail {
/// Euclidean projection onto {g >= 0, sum g_i^{ap} dx <= 1}.
void project_ball(std::vector<double>& g, double alpha_prime, double dx);
/// f values on the grid from the down-derivative: f_j = sum_{i>=j} g_i dx.
std::vector<double> profile_from_derivative(const std::vector<double>& g, double dx);
}  // namespace detail

}  // namespace stablex
