#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stablex/sampling.hpp"
#include "stablex/stats.hpp"
#include "stablex/validation.hpp"

using namespace stablex;

namespace {
const StableParams P43 = make_params(4.0 / 3.0);
}

TEST_CASE("stable increment laplace and scaling" * doctest::timeout(300)) {
    auto checks = increment_laplace_checks(P43, 1.0, {0.5, 1.0, 2.0}, 1000000, 42);
    for (const auto& c : checks) {
        INFO(c.detail);
        CHECK(c.pass);
    }
    auto sc = increment_scaling_check(P43, 0.25, 100000, 43);
    INFO(sc.detail);
    CHECK(sc.pass);
}

TEST_CASE("increment median matches the density table" * doctest::timeout(300)) {
    auto tab = DensityTable::build(P43, 1.0, -10.0, 60.0, 4096, {}, false);
    RngStream rng(7);
    std::vector<double> draws(200000);
    for (auto& d : draws) d = stable_increment(P43, 1.0, rng);
    std::nth_element(draws.begin(), draws.begin() + draws.size() / 2, draws.end());
    const double med_emp = draws[draws.size() / 2];
    CHECK(std::abs(med_emp - tab.quantile(0.5)) < 1e-2);
}

TEST_CASE("bridge skeleton construction invariants") {
    SamplerConfig cfg;
    RngStream rng(1);
    auto sk = sample_bridge(P43, -1.0, 8, rng, cfg);
    CHECK(sk.n == 8);
    CHECK(sk.values.size() == 9);
    CHECK(sk.values[0] == 0.0);
    CHECK(sk.values[8] == -1.0);
    CHECK(sk.kind == SkeletonKind::bridge);
    CHECK_THROWS_AS(sample_bridge(P43, 0.0, 12, rng, cfg), std::invalid_argument);

    // determinism: same seed, same skeleton bit-exactly
    RngStream r1(99), r2(99);
    auto a = sample_bridge(P43, 0.5, 64, r1, cfg);
    auto b = sample_bridge(P43, 0.5, 64, r2, cfg);
    for (int i = 0; i <= 64; ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("excursion invariants hold with zero violations") {
    auto checks = skeleton_invariant_checks(P43, -1.0, 2000, 64, 5, {});
    for (const auto& c : checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("free path distributional checks" * doctest::timeout(300)) {
    RngStream rng(11);
    auto sk = sample_free_path(P43, 256, rng);
    CHECK(sk.values[0] == 0.0);
    CHECK(sk.values.size() == 257);

    // endpoint distributed like stable_increment(1): two-sample KS
    const int N = 50000;
    std::vector<double> ends(N), direct(N);
    RngStream root(12);
    for (int i = 0; i < N; ++i) {
        RngStream r = root.child(i);
        PathSkeleton s = sample_free_path(P43, 32, r);
        ends[i] = s.values[32];
    }
    RngStream rd(13);
    for (int i = 0; i < N; ++i) direct[i] = stable_increment(P43, 1.0, rd);
    const double d = ks_two_sample(ends, direct);
    const double p = ks_two_sample_pvalue(d, N, N);
    INFO("D=", d, " p=", p);
    CHECK(p >= 1e-3);

    // disjoint-block increments uncorrelated within MC error
    RngStream root2(14);
    double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
    const int M = 20000;
    for (int i = 0; i < M; ++i) {
        RngStream r = root2.child(i);
        PathSkeleton s = sample_free_path(P43, 16, r);
        const double x = s.values[8] - s.values[0];
        const double y = s.values[16] - s.values[8];
        // clip to tame the heavy tail before correlating
        auto cl = [](double v) { return std::clamp(v, -8.0, 8.0); };
        sx += cl(x);
        sy += cl(y);
        sxy += cl(x) * cl(y);
        sxx += cl(x) * cl(x);
        syy += cl(y) * cl(y);
    }
    const double corr = (sxy / M - sx / M * sy / M) /
                        std::sqrt((sxx / M - sx / M * sx / M) * (syy / M - sy / M * sy / M));
    CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("free tail mass carries the C_alpha coefficient" * doctest::timeout(600)) {
    auto c = free_tail_check(P43, 20.0, 4000000, 21, 0.30);
    INFO(c.detail);
    CHECK(c.pass);
}

TEST_CASE("functionals on skeletons") {
    PathSkeleton sk;
    sk.n = 4;
    sk.values = {1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(functional_area(sk) == 1.0);
    CHECK(functional_sup(sk) == 1.0);

    PathSkeleton ramp;
    ramp.n = 1024;
    ramp.values.resize(1025);
    for (int i = 0; i <= 1024; ++i) ramp.values[i] = 1.0 - i / 1024.0;
    CHECK(functional_area(ramp) == doctest::Approx(0.5).epsilon(1.0 / 1024.0));
    CHECK(functional_sup(ramp) == 1.0);

    PathSkeleton zero;
    zero.n = 2;
    zero.values = {0.0, 0.0, 0.0};
    CHECK(functional_sup(zero) == 0.0);

    // nested-grid refinement: sup over a finer dyadic grid dominates
    SamplerConfig cfg;
    RngStream r1(5);
    auto b = sample_bridge(P43, 0.0, 128, r1, cfg);
    PathSkeleton coarse;
    coarse.n = 64;
    for (int i = 0; i <= 128; i += 2) coarse.values.push_back(b.values[i]);
    CHECK(functional_sup(b) >= functional_sup(coarse));
}

TEST_CASE("skeleton batch csv round trip") {
    SamplerConfig cfg;
    RngStream root(31);
    std::vector<PathSkeleton> batch;
    for (int i = 0; i < 5; ++i) {
        RngStream r = root.child(i);
        batch.push_back(sample_bridge(P43, -1.0, 8, r, cfg));
    }
    std::ostringstream os;
    write_skeleton_batch(os, batch);
    std::istringstream is(os.str());
    auto back = read_skeleton_batch(is);
    REQUIRE(back.size() == batch.size());
    CHECK(back[0].alpha == batch[0].alpha);
    CHECK(back[0].kind == SkeletonKind::bridge);
    CHECK(back[0].bridge_a == -1.0);
    for (size_t k = 0; k < batch.size(); ++k)
        for (int i = 0; i <= 8; ++i) CHECK(back[k].values[i] == batch[k].values[i]);
}

TEST_CASE("bridge marginals match quadrature (small N smoke)" * doctest::timeout(600)) {
    // acceptance runs N=1e5 at threshold 0.02; the smoke run uses a wider gate
    auto checks = bridge_marginal_checks(P43, 0.0, 20000, 101, 0.02);
    for (const auto& c : checks) {
        INFO(c.detail, " ks=", c.stat);
        CHECK(c.pass);
    }
}

TEST_CASE("negative control: quarter-path rescaling is not an excursion" * doctest::timeout(300)) {
    // S^(lambda)-rescaled first quarter vs the full excursion marginal at t=1/2:
    // the two-sample KS must REJECT (harness self-check)
    SamplerConfig cfg;
    RngStream root(77);
    const int N = 20000;
    std::vector<double> full(N), rescaled(N);
    for (int i = 0; i < N; ++i) {
        RngStream r = root.child(i);
        auto e = sample_excursion(P43, 64, r, cfg);
        full[i] = e.values[32];
        // lambda = 4: S^(4) maps the quarter lifetime to unit lifetime
        rescaled[i] = std::pow(4.0, 1.0 / P43.alpha) * e.values[8];
    }
    const double d = ks_two_sample(full, rescaled);
    const double p = ks_two_sample_pvalue(d, N, N);
    INFO("D=", d, " p=", p);
    CHECK(p < 1e-3);
}
