#include "stablex/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace stablex {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUMin = 1e-9;
constexpr int kUHalf = 576;
constexpr double kDRange = 1e8;

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

std::string fmt17(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

void SamplerConfig::validate() const {
    if (density_table_points < 256)
        throw std::invalid_argument("SamplerConfig: density_table_points must be >= 256");
    if (max_table_rebuilds < 1)
        throw std::invalid_argument("SamplerConfig: max_table_rebuilds must be >= 1");
}

double PathSkeleton::at_time(double t) const {
    const int i = static_cast<int>(std::lround(t * n));
    return values[std::clamp(i, 0, n)];
}

double stable_increment(const StableParams& params, double t, RngStream& rng) {
    if (!(t > 0.0)) throw std::domain_error("stable_increment: t must be > 0");
    const double alpha = params.alpha;
    const double b = kPi / 2 - kPi / alpha;  // arctan(tan(pi alpha/2))/alpha for beta = 1
    const double v = kPi * (rng.uniform01() - 0.5);
    const double w = -std::log(rng.uniform01());
    // Chambers-Mallows-Stuck; the S1 scale factor cancels against sigma_alpha
    const double x = std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
    return std::pow(t, 1.0 / alpha) * x;
}

MidpointSampler::MidpointSampler(const StableParams& params, const SamplerConfig& config)
    : params_(params), config_(config) {
    config_.validate();
    build_master();
    build_quantiles();
}

void MidpointSampler::build_master() {
    const double xlo =
        -(std::pow(766.0 / params_.c_alpha, 1.0 / params_.alpha_prime) + 1.0);
    const double dense_hi = 30.0;
    const double step = 0.005;
    tail_cut_ = 1e4;
    QuadratureSpec quad;  // defaults
    for (double x = xlo; x <= dense_hi + 1e-12; x += step) mx_.push_back(x);
    const int nlog = 600;
    const double r = std::log(tail_cut_ / dense_hi) / nlog;
    for (int i = 1; i <= nlog; ++i) mx_.push_back(dense_hi * std::exp(r * i));
    mp_.resize(mx_.size());
    for (size_t i = 0; i < mx_.size(); ++i) mp_[i] = density(params_, 1.0, mx_[i], quad);

    // interquartile width from the master grid
    std::vector<double> cum(mx_.size(), 0.0);
    for (size_t i = 1; i < mx_.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (mp_[i] + mp_[i - 1]) * (mx_[i] - mx_[i - 1]);
    const double total = cum.back();
    auto quant = [&](double q) {
        const double target = q * total;
        const auto it = std::lower_bound(cum.begin(), cum.end(), target);
        const size_t i = std::max<size_t>(1, it - cum.begin());
        const double w = (target - cum[i - 1]) / std::max(cum[i] - cum[i - 1], 1e-300);
        return mx_[i - 1] + w * (mx_[i] - mx_[i - 1]);
    };
    iqw_ = quant(0.75) - quant(0.25);
}

double MidpointSampler::p1(double x) const {
    if (x <= mx_.front()) return 0.0;
    if (x >= tail_cut_)
        return params_.alpha * params_.C_alpha * std::pow(x, -params_.alpha - 1.0);
    const auto it = std::upper_bound(mx_.begin(), mx_.end(), x);
    const size_t i = it - mx_.begin();
    const double w = (x - mx_[i - 1]) / (mx_[i] - mx_[i - 1]);
    return std::max(mp_[i - 1] + w * (mp_[i] - mp_[i - 1]), 0.0);
}

std::vector<double> MidpointSampler::column_quantiles(double dt) const {
    const double w12 = 12.0 * iqw_;
    std::vector<double> v;
    auto add_linspace = [&](double a, double b, int n) {
        for (int i = 0; i <= n; ++i) v.push_back(a + (b - a) * i / n);
    };
    const int base = config_.density_table_points / 4;
    add_linspace(-w12, w12, base);
    if (std::abs(dt) > 1.0) {
        add_linspace(dt - w12, dt + w12, base);
        const double wm = std::max(w12, 0.02 * std::abs(dt));
        add_linspace(dt / 2 - wm, dt / 2 + wm, base / 3);
        add_linspace(std::min(0.0, dt) - w12, std::max(0.0, dt) + w12, base);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());

    std::vector<double> g(v.size()), cum(v.size(), 0.0);
    for (size_t i = 0; i < v.size(); ++i) g[i] = p1(v[i]) * p1(dt - v[i]);
    for (size_t i = 1; i < v.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (g[i] + g[i - 1]) * (v[i] - v[i - 1]);
    std::vector<double> out(u_nodes_.size());
    const double total = cum.back();
    if (!(total > 0.0)) {  // unreachable gap; keep a degenerate midpoint
        std::fill(out.begin(), out.end(), std::asinh(dt / 2));
        return out;
    }
    size_t i = 1;
    for (size_t k = 0; k < u_nodes_.size(); ++k) {
        const double target = u_nodes_[k] * total;
        while (i + 1 < cum.size() && cum[i] < target) ++i;
        const double dc = cum[i] - cum[i - 1];
        const double w = dc > 0.0 ? (target - cum[i - 1]) / dc : 0.5;
        out[k] = std::asinh(v[i - 1] + std::clamp(w, 0.0, 1.0) * (v[i] - v[i - 1]));
    }
    for (size_t k = 1; k < out.size(); ++k) out[k] = std::max(out[k], out[k - 1]);
    return out;
}

void MidpointSampler::build_quantiles() {
    const int nu = 2 * kUHalf + 1;
    u_nodes_.resize(nu);
    const double lg = std::log(0.5 / kUMin);
    for (int k = 0; k < nu; ++k) {
        const double w = static_cast<double>(k) / (nu - 1);
        u_nodes_[k] = (w <= 0.5) ? kUMin * std::exp(2.0 * w * lg)
                                 : 1.0 - kUMin * std::exp(2.0 * (1.0 - w) * lg);
    }
    J_ = 512;
    asinh_span_ = std::asinh(kDRange);
    q_.resize(static_cast<size_t>(J_ + 1) * nu);
    for (int j = 0; j <= J_; ++j) {
        const double s = 2.0 * j / J_ - 1.0;
        const double dt = std::sinh(asinh_span_ * s);
        auto col = column_quantiles(dt);
        std::copy(col.begin(), col.end(), q_.begin() + static_cast<size_t>(j) * nu);
    }
}

double MidpointSampler::draw(double u, double dtilde) const {
    const int nu = 2 * kUHalf + 1;
    const double s = std::clamp(std::asinh(dtilde) / asinh_span_, -1.0, 1.0);
    double sj = (s + 1.0) * 0.5 * J_;
    sj = std::clamp(sj, 0.0, J_ - 1e-9);
    const int j0 = static_cast<int>(sj);
    const double fj = sj - j0;

    u = std::clamp(u, kUMin * (1.0 + 1e-12), 1.0 - kUMin * (1.0 + 1e-12));
    const double lg = std::log(0.5 / kUMin);
    const double w = (u <= 0.5) ? 0.5 * std::log(u / kUMin) / lg
                                : 1.0 - 0.5 * std::log((1.0 - u) / kUMin) / lg;
    double si = std::clamp(w * (nu - 1), 0.0, nu - 1 - 1e-9);
    const int i0 = static_cast<int>(si);
    const double fi = si - i0;

    const double* r0 = q_.data() + static_cast<size_t>(j0) * nu;
    const double* r1 = r0 + nu;
    const double q = (1.0 - fj) * ((1.0 - fi) * r0[i0] + fi * r0[i0 + 1]) +
                     fj * ((1.0 - fi) * r1[i0] + fi * r1[i0 + 1]);
    return std::sinh(q);
}

const MidpointSampler& midpoint_sampler(const StableParams& params, const SamplerConfig& config) {
    struct Key {
        double alpha;
        int pts;
        bool operator<(const Key& o) const {
            return alpha != o.alpha ? alpha < o.alpha : pts < o.pts;
        }
    };
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<MidpointSampler>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{params.alpha, config.density_table_points}];
    if (!slot) slot = std::make_unique<MidpointSampler>(params, config);
    return *slot;
}

PathSkeleton sample_bridge(const StableParams& params, double a, int n, RngStream& rng,
                           const SamplerConfig& config) {
    if (!is_pow2(n)) throw std::invalid_argument("sample_bridge: n must be a power of 2");
    const MidpointSampler& ms = midpoint_sampler(params, config);
    PathSkeleton sk;
    sk.n = n;
    sk.kind = SkeletonKind::bridge;
    sk.bridge_a = a;
    sk.alpha = params.alpha;
    sk.seed = rng.seed();
    sk.values.assign(n + 1, 0.0);
    sk.values[n] = a;
    for (int span = n; span > 1; span /= 2) {
        const double h = static_cast<double>(span / 2) / n;
        const double scale = std::pow(h, 1.0 / params.alpha);
        for (int il = 0; il < n; il += span) {
            const int im = il + span / 2;
            const int ir = il + span;
            const double dt = (sk.values[ir] - sk.values[il]) / scale;
            sk.values[im] = sk.values[il] + scale * ms.draw(rng.uniform01(), dt);
        }
    }
    return sk;
}

PathSkeleton sample_excursion(const StableParams& params, int n, RngStream& rng,
                              const SamplerConfig& config) {
    PathSkeleton b = sample_bridge(params, 0.0, n, rng, config);
    int argmin = 0;
    for (int i = 1; i < n; ++i)
        if (b.values[i] < b.values[argmin]) argmin = i;
    const double mn = b.values[argmin];
    PathSkeleton e;
    e.n = n;
    e.kind = SkeletonKind::excursion;
    e.alpha = params.alpha;
    e.seed = rng.seed();
    e.values.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int idx = argmin + j;
        e.values[j] = (idx < n ? b.values[idx] : b.values[idx - n]) - mn;
    }
    return e;
}

PathSkeleton sample_free_path(const StableParams& params, int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_free_path: n must be >= 1");
    PathSkeleton sk;
    sk.n = n;
    sk.kind = SkeletonKind::free;
    sk.alpha = params.alpha;
    sk.seed = rng.seed();
    sk.values.assign(n + 1, 0.0);
    const double dt = 1.0 / n;
    for (int i = 0; i < n; ++i)
        sk.values[i + 1] = sk.values[i] + stable_increment(params, dt, rng);
    return sk;
}

double functional_area(const PathSkeleton& skeleton) {
    double s = 0.0;
    for (int i = 0; i < skeleton.n; ++i) s += skeleton.values[i];
    return s / skeleton.n;
}

double functional_sup(const PathSkeleton& skeleton) {
    return *std::max_element(skeleton.values.begin(), skeleton.values.end());
}

namespace {
const char* kind_name(SkeletonKind k) {
    switch (k) {
        case SkeletonKind::free: return "free";
        case SkeletonKind::bridge: return "bridge";
        case SkeletonKind::excursion: return "excursion";
    }
    return "?";
}
}  // namespace

void write_skeleton_batch(std::ostream& os, const std::vector<PathSkeleton>& batch) {
    if (batch.empty()) throw std::invalid_argument("write_skeleton_batch: empty batch");
    const PathSkeleton& h = batch.front();
    os << "# alpha=" << fmt17(h.alpha) << ", n=" << h.n << ", seed=" << h.seed
       << ", kind=" << kind_name(h.kind);
    if (h.kind == SkeletonKind::bridge) os << ", a=" << fmt17(h.bridge_a);
    os << '\n';
    for (const auto& sk : batch) {
        for (int i = 0; i <= sk.n; ++i) {
            if (i) os << ',';
            os << fmt17(sk.values[i]);
        }
        os << '\n';
    }
}

std::vector<PathSkeleton> read_skeleton_batch(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# alpha=", 0) != 0)
        throw std::runtime_error("skeleton CSV: missing metadata header");
    PathSkeleton proto;
    {
        std::string body = line.substr(2);
        std::istringstream hs(body);
        std::string tok;
        while (std::getline(hs, tok, ',')) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq);
            key.erase(0, key.find_first_not_of(' '));
            const std::string val = tok.substr(eq + 1);
            if (key == "alpha") proto.alpha = std::stod(val);
            else if (key == "n") proto.n = std::stoi(val);
            else if (key == "seed") proto.seed = std::stoull(val);
            else if (key == "a") proto.bridge_a = std::stod(val);
            else if (key == "kind") {
                if (val == "free") proto.kind = SkeletonKind::free;
                else if (val == "bridge") proto.kind = SkeletonKind::bridge;
                else if (val == "excursion") proto.kind = SkeletonKind::excursion;
                else throw std::runtime_error("skeleton CSV: unknown kind");
            }
        }
    }
    std::vector<PathSkeleton> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        PathSkeleton sk = proto;
        sk.values.clear();
        sk.values.reserve(proto.n + 1);
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            double v;
            auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc{}) throw std::runtime_error("skeleton CSV: bad value");
            sk.values.push_back(v);
            p = res.ptr;
            if (p < end) {
                if (*p != ',') throw std::runtime_error("skeleton CSV: bad separator");
                ++p;
            }
        }
        if (static_cast<int>(sk.values.size()) != proto.n + 1)
            throw std::runtime_error("skeleton CSV: row length mismatch");
        out.push_back(std::move(sk));
    }
    return out;
}

}  // namespace stablex
