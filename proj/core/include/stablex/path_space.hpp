#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace stablex {

enum class Interp { step, linear };

/// Finite-breakpoint cadlag function on [0,1], rooted by the convention
/// f(0-) = 0. Between breakpoints the path is constant (step) or the chord
/// from right[i] to left[i+1] (linear). left[0] is always 0.
class CadlagPath {
  public:
    CadlagPath(std::vector<double> times, std::vector<double> lefts, std::vector<double> rights,
               Interp interp);

    /// Pure-jump path: value(t) = values[i] on [times[i], times[i+1]).
    static CadlagPath step_path(std::vector<double> times, std::vector<double> values);
    /// Continuous piecewise-linear path through (times[i], values[i]).
    static CadlagPath linear_path(std::vector<double> times, std::vector<double> values);
    /// Constant-zero path.
    static CadlagPath zero();
    /// Indicator of [a, b) (or [a, 1] when b == 1), as a step path.
    static CadlagPath indicator(double a, double b);

    size_t size() const { return t_.size(); }
    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& lefts() const { return left_; }
    const std::vector<double>& rights() const { return right_; }
    Interp interp() const { return interp_; }

    double value(double t) const;       // right-continuous evaluation
    double left_limit(double t) const;  // f(t-); f(0-) = 0
    double start() const { return right_.front(); }
    double end() const { return right_.back(); }
    double min_value() const;
    double max_value() const;
    double total_variation() const;  // includes the initial jump from f(0-)=0

    CadlagPath scaled(double lambda) const;  // lambda * f

    /// `# interpolation=...` line, then `t,left,right` rows; exact round-trip.
    void write_csv(std::ostream& os) const;
    static CadlagPath read_csv(std::istream& is);

  private:
    std::vector<double> t_, left_, right_;
    Interp interp_;
};

struct JordanDecomposition {
    CadlagPath up;    // nondecreasing, carries a positive atom at 0 when f(0) > 0
    CadlagPath down;  // nondecreasing
};

/// Minimal decomposition f = up - down with mutually singular increments.
JordanDecomposition jordan(const CadlagPath& path);

/// M(x,y,z) = d(y, [x ^ z, x v z]).
double m_value(double x, double y, double z);

/// w_M(f, delta): sup of M(f(t1-), f(t), f(t2)) over 0 <= t1 < t < t2 <= 1
/// with t2 - t1 < delta; exact over the breakpoint candidate set.
double m_oscillation(const CadlagPath& path, double delta);

/// omega_J1(f, eta): sup of |f(u)-f(t)| ^ |f(t)-f(s)| over s < t < u, u - s <= eta.
double j1_oscillation(const CadlagPath& path, double eta);

/// Polygonal chain tracing the rooted augmented graph Gamma_0(f) in the
/// order given by the total order on the graph.
struct AugmentedGraph {
    std::vector<std::pair<double, double>> vertices;  // (time, value)
};

AugmentedGraph augmented_graph(const CadlagPath& path);

/// M1' distance: infimum over monotone parametric representations of the two
/// rooted augmented graphs of the sup of the max-coordinate metric. Binary
/// search over eps with a free-space reachability decision; result within tol.
double m1_distance(const CadlagPath& p1, const CadlagPath& p2, double tol);

namespace detail {
/// Decision procedure: is the monotone-matching (Frechet) distance between the
/// chains at most eps under the L-inf ground metric?
bool m1_within(const AugmentedGraph& a, const AugmentedGraph& b, double eps);
}  // namespace detail

}  // namespace stablex
