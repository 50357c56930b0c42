#include "stablex/path_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace stablex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt17(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

CadlagPath::CadlagPath(std::vector<double> times, std::vector<double> lefts,
                       std::vector<double> rights, Interp interp)
    : t_(std::move(times)), left_(std::move(lefts)), right_(std::move(rights)), interp_(interp) {
    if (t_.size() < 2 || t_.size() != left_.size() || t_.size() != right_.size())
        throw std::invalid_argument("CadlagPath: need matching arrays with at least 2 breakpoints");
    if (t_.front() != 0.0 || t_.back() != 1.0)
        throw std::invalid_argument("CadlagPath: breakpoints must span [0,1]");
    for (size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1]))
            throw std::invalid_argument("CadlagPath: breakpoints must be strictly increasing");
    if (left_.front() != 0.0)
        throw std::invalid_argument("CadlagPath: rooted convention requires left value 0 at t=0");
    if (interp_ == Interp::step) {
        for (size_t i = 1; i < t_.size(); ++i)
            if (left_[i] != right_[i - 1])
                throw std::invalid_argument(
                    "CadlagPath: step path requires left[i] == right[i-1]");
    }
}

CadlagPath CadlagPath::step_path(std::vector<double> times, std::vector<double> values) {
    std::vector<double> lefts(values.size());
    lefts[0] = 0.0;
    for (size_t i = 1; i < values.size(); ++i) lefts[i] = values[i - 1];
    return CadlagPath(std::move(times), std::move(lefts), std::move(values), Interp::step);
}

CadlagPath CadlagPath::linear_path(std::vector<double> times, std::vector<double> values) {
    std::vector<double> lefts = values;
    lefts[0] = 0.0;  // rooted; right_[0] == values[0] is the initial jump if nonzero
    return CadlagPath(std::move(times), std::move(lefts), std::move(values), Interp::linear);
}

CadlagPath CadlagPath::zero() { return step_path({0.0, 1.0}, {0.0, 0.0}); }

CadlagPath CadlagPath::indicator(double a, double b) {
    if (!(0.0 <= a) || !(a < b) || !(b <= 1.0))
        throw std::invalid_argument("indicator: need 0 <= a < b <= 1");
    std::vector<double> t{0.0}, v{a == 0.0 ? 1.0 : 0.0};
    if (a > 0.0) {
        t.push_back(a);
        v.push_back(1.0);
    }
    if (b < 1.0) {
        t.push_back(b);
        v.push_back(0.0);
    }
    t.push_back(1.0);
    v.push_back(b < 1.0 ? 0.0 : 1.0);
    return step_path(std::move(t), std::move(v));
}

double CadlagPath::value(double t) const {
    if (t <= 0.0) return right_.front();
    if (t >= 1.0) return right_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const size_t i = (it - t_.begin()) - 1;  // t_[i] <= t < t_[i+1]
    if (t == t_[i] || interp_ == Interp::step) return right_[i];
    const double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
    return right_[i] + w * (left_[i + 1] - right_[i]);
}

double CadlagPath::left_limit(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) t = 1.0;
    const auto it = std::lower_bound(t_.begin(), t_.end(), t);
    if (it != t_.end() && *it == t) return left_[it - t_.begin()];
    return value(t);  // continuity inside a segment for both interpolations
}

double CadlagPath::min_value() const {
    double m = kInf;
    for (size_t i = 0; i < t_.size(); ++i) {
        m = std::min(m, right_[i]);
        if (i > 0) m = std::min(m, left_[i]);
    }
    return m;
}

double CadlagPath::max_value() const {
    double m = -kInf;
    for (size_t i = 0; i < t_.size(); ++i) {
        m = std::max(m, right_[i]);
        if (i > 0) m = std::max(m, left_[i]);
    }
    return m;
}

double CadlagPath::total_variation() const {
    double tv = std::abs(right_[0]);  // jump from f(0-) = 0
    for (size_t i = 1; i < t_.size(); ++i)
        tv += std::abs(left_[i] - right_[i - 1]) + std::abs(right_[i] - left_[i]);
    return tv;
}

CadlagPath CadlagPath::scaled(double lambda) const {
    std::vector<double> l(left_), r(right_);
    for (auto& v : l) v *= lambda;
    for (auto& v : r) v *= lambda;
    l[0] = 0.0;
    return CadlagPath(t_, std::move(l), std::move(r), interp_);
}

void CadlagPath::write_csv(std::ostream& os) const {
    os << "# interpolation=" << (interp_ == Interp::step ? "step" : "linear") << '\n';
    os << "t,left,right\n";
    for (size_t i = 0; i < t_.size(); ++i)
        os << fmt17(t_[i]) << ',' << fmt17(left_[i]) << ',' << fmt17(right_[i]) << '\n';
}

CadlagPath CadlagPath::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("path CSV: empty stream");
    Interp interp;
    if (line == "# interpolation=step")
        interp = Interp::step;
    else if (line == "# interpolation=linear")
        interp = Interp::linear;
    else
        throw std::runtime_error("path CSV: missing interpolation header");
    if (!std::getline(is, line) || line != "t,left,right")
        throw std::runtime_error("path CSV: bad column header");
    std::vector<double> t, l, r;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double v[3];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 3; ++k) {
            auto res = std::from_chars(p, end, v[k]);
            if (res.ec != std::errc{}) throw std::runtime_error("path CSV: bad row");
            p = res.ptr;
            if (k < 2) {
                if (p == end || *p != ',') throw std::runtime_error("path CSV: bad row");
                ++p;
            }
        }
        t.push_back(v[0]);
        l.push_back(v[1]);
        r.push_back(v[2]);
    }
    return CadlagPath(std::move(t), std::move(l), std::move(r), interp);
}

JordanDecomposition jordan(const CadlagPath& path) {
    const auto& t = path.times();
    const auto& lf = path.lefts();
    const auto& rt = path.rights();
    const size_t m = t.size();
    std::vector<double> ul(m), ur(m), dl(m), dr(m);
    double u = 0.0, d = 0.0;
    ul[0] = dl[0] = 0.0;
    const double j0 = rt[0];
    u += std::max(j0, 0.0);
    d += std::max(-j0, 0.0);
    ur[0] = u;
    dr[0] = d;
    for (size_t i = 1; i < m; ++i) {
        const double seg = lf[i] - rt[i - 1];
        u += std::max(seg, 0.0);
        d += std::max(-seg, 0.0);
        ul[i] = u;
        dl[i] = d;
        const double jmp = rt[i] - lf[i];
        u += std::max(jmp, 0.0);
        d += std::max(-jmp, 0.0);
        ur[i] = u;
        dr[i] = d;
    }
    return JordanDecomposition{
        CadlagPath(t, std::move(ul), std::move(ur), path.interp()),
        CadlagPath(t, std::move(dl), std::move(dr), path.interp()),
    };
}

double m_value(double x, double y, double z) {
    const double lo = std::min(x, z), hi = std::max(x, z);
    return std::max({0.0, y - hi, lo - y});
}

namespace {

// One-sided value candidates at breakpoints, in graph order. side: -1 the
// left-limit germ, +1 the right-continuous germ, 0 the rooted f(0-) = 0
// (usable only as the first element of a triple).
struct Sample {
    double tau;
    double val;
    int side;
};

std::vector<Sample> candidate_samples(const CadlagPath& p) {
    std::vector<Sample> s;
    const auto& t = p.times();
    const auto& lf = p.lefts();
    const auto& rt = p.rights();
    s.push_back({0.0, 0.0, 0});
    s.push_back({t[0], rt[0], +1});
    for (size_t i = 1; i < t.size(); ++i) {
        s.push_back({t[i], lf[i], -1});
        s.push_back({t[i], rt[i], +1});
    }
    return s;
}

// Is a window < delta realizable with outer germs a, c? Exact at equality:
// a right-germ or c left-germ can shrink the window below tau_c - tau_a.
bool window_lt(const Sample& a, const Sample& c, double delta) {
    const double d = c.tau - a.tau;
    if (d < delta) return true;
    return d == delta && (a.side == +1 || c.side == -1);
}

// Non-strict window (<= eta). Only the combination left-germ at a with
// right-germ at c forces every realizable window strictly above tau_c - tau_a.
bool window_le(const Sample& a, const Sample& c, double eta) {
    const double d = c.tau - a.tau;
    if (d < eta) return true;
    return d == eta && !(a.side == -1 && c.side == +1);
}

}  // namespace

double m_oscillation(const CadlagPath& path, double delta) {
    if (!(delta > 0.0) || !(delta <= 1.0))
        throw std::invalid_argument("m_oscillation: delta must be in (0,1]");
    const auto s = candidate_samples(path);
    const size_t k = s.size();
    double best = 0.0;
    for (size_t ia = 0; ia < k; ++ia) {
        double midlo = kInf, midhi = -kInf;
        for (size_t ic = std::max<size_t>(ia, 1); ic < k; ++ic) {
            midlo = std::min(midlo, s[ic].val);
            midhi = std::max(midhi, s[ic].val);
            if (!window_lt(s[ia], s[ic], delta)) {
                if (s[ic].tau - s[ia].tau > delta) break;
                continue;
            }
            const double lo = std::min(s[ia].val, s[ic].val);
            const double hi = std::max(s[ia].val, s[ic].val);
            best = std::max({best, midhi - hi, lo - midlo});
        }
    }
    return best;
}

double j1_oscillation(const CadlagPath& path, double eta) {
    if (!(eta > 0.0) || !(eta <= 1.0))
        throw std::invalid_argument("j1_oscillation: eta must be in (0,1]");
    const auto s = candidate_samples(path);
    const size_t k = s.size();
    double best = 0.0;
    for (size_t ia = 1; ia < k; ++ia) {  // no rooted value in omega_J1
        for (size_t ic = ia; ic < k; ++ic) {
            if (!window_le(s[ia], s[ic], eta)) {
                if (s[ic].tau - s[ia].tau > eta) break;
                continue;
            }
            for (size_t ib = ia; ib <= ic; ++ib) {
                const double v = std::min(std::abs(s[ib].val - s[ia].val),
                                          std::abs(s[ic].val - s[ib].val));
                best = std::max(best, v);
            }
        }
    }
    return best;
}

AugmentedGraph augmented_graph(const CadlagPath& path) {
    AugmentedGraph g;
    auto push = [&](double t, double x) {
        if (!g.vertices.empty() && g.vertices.back().first == t && g.vertices.back().second == x)
            return;
        g.vertices.emplace_back(t, x);
    };
    const auto& t = path.times();
    const auto& lf = path.lefts();
    const auto& rt = path.rights();
    push(0.0, 0.0);
    push(0.0, rt[0]);
    for (size_t i = 1; i < t.size(); ++i) {
        push(t[i], lf[i]);
        push(t[i], rt[i]);
    }
    if (g.vertices.size() < 2) push(1.0, rt.back());  // constant-zero path
    return g;
}

namespace detail {

namespace {

struct Interval {
    double lo = kInf, hi = -kInf;
    bool empty() const { return lo > hi; }
};

// Free parameters v of segment q0 + v (q1 - q0) within L-inf distance eps of p.
Interval edge_free(const std::pair<double, double>& p, const std::pair<double, double>& q0,
                   const std::pair<double, double>& q1, double eps) {
    double lo = 0.0, hi = 1.0;
    const double d0[2] = {q0.first - p.first, q0.second - p.second};
    const double dd[2] = {q1.first - q0.first, q1.second - q0.second};
    for (int c = 0; c < 2; ++c) {
        if (dd[c] == 0.0) {
            if (std::abs(d0[c]) > eps) return {};
            continue;
        }
        double a = (-eps - d0[c]) / dd[c];
        double b = (eps - d0[c]) / dd[c];
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
    }
    if (lo > hi) return {};
    return {lo, hi};
}

}  // namespace

bool m1_within(const AugmentedGraph& ga, const AugmentedGraph& gb, double eps) {
    const auto& A = ga.vertices;
    const auto& B = gb.vertices;
    const size_t M = A.size() - 1;  // segments
    const size_t N = B.size() - 1;

    // Left boundary: edges (a_0 x B_j), travel upward only.
    std::vector<Interval> L(N);
    {
        bool alive = true;
        for (size_t j = 0; j < N; ++j) {
            Interval f = edge_free(A[0], B[j], B[j + 1], eps);
            if (alive && !f.empty() && f.lo <= 0.0)
                L[j] = {0.0, f.hi};
            else
                L[j] = {};
            alive = !L[j].empty() && L[j].hi >= 1.0;
        }
    }

    // Bottom boundary entry state for each row start.
    bool bottom_alive = true;
    Interval final_top{};
    for (size_t i = 0; i < M; ++i) {
        Interval bot;
        {
            Interval f = edge_free(B[0], A[i], A[i + 1], eps);
            if (bottom_alive && !f.empty() && f.lo <= 0.0)
                bot = {0.0, f.hi};
            else
                bot = {};
            bottom_alive = !bot.empty() && bot.hi >= 1.0;
        }
        for (size_t j = 0; j < N; ++j) {
            const Interval left = L[j];
            // right edge of cell (i,j): point A[i+1] x segment B_j
            Interval fr = edge_free(A[i + 1], B[j], B[j + 1], eps);
            if (!bot.empty())
                L[j] = fr;
            else if (!left.empty()) {
                if (fr.empty() || fr.hi < left.lo)
                    L[j] = {};
                else
                    L[j] = {std::max(fr.lo, left.lo), fr.hi};
            } else
                L[j] = {};
            // top edge of cell (i,j): segment A_i x point b_{j+1}
            Interval ft = edge_free(B[j + 1], A[i], A[i + 1], eps);
            Interval top;
            if (!left.empty())
                top = ft;
            else if (!bot.empty()) {
                if (ft.empty() || ft.hi < bot.lo)
                    top = {};
                else
                    top = {std::max(ft.lo, bot.lo), ft.hi};
            } else
                top = {};
            bot = top;
        }
        final_top = bot;
    }
    const bool right_corner = !L[N - 1].empty() && L[N - 1].hi >= 1.0;
    const bool top_corner = !final_top.empty() && final_top.hi >= 1.0;
    return right_corner || top_corner;
}

}  // namespace detail

double m1_distance(const CadlagPath& p1, const CadlagPath& p2, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("m1_distance: tol must be > 0");
    const AugmentedGraph a = augmented_graph(p1);
    const AugmentedGraph b = augmented_graph(p2);
    if (detail::m1_within(a, b, 0.0)) return 0.0;
    double hi = 1.0;
    for (const auto& v : a.vertices) hi = std::max(hi, 1.0 + std::abs(v.second));
    for (const auto& v : b.vertices) hi = std::max(hi, 1.0 + std::abs(v.second));
    while (!detail::m1_within(a, b, hi)) hi *= 2.0;  // paranoia; the bound above suffices
    double lo = 0.0;
    while (hi - lo > 1.9 * tol) {
        const double mid = 0.5 * (lo + hi);
        (detail::m1_within(a, b, mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace stablex
