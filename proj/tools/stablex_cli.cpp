// stablex command line: density queries, path sampling, rate evaluation,
// M1' distances, variational constants, and Monte Carlo tail campaigns.
// Every output file starts with a config-echo comment header and reruns are
// byte-identical for identical flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stablex/ldp_harness.hpp"
#include "stablex/path_space.hpp"
#include "stablex/rate_functions.hpp"
#include "stablex/sampling.hpp"
#include "stablex/stable_math.hpp"
#include "stablex/validation.hpp"
#include "stablex/variational.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stablex;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 1 validation failure, 2 usage/domain, 3 numerical failure
enum ExitCode { kOk = 0, kValidationFail = 1, kUsage = 2, kNumerical = 3 };

using KV = std::vector<std::pair<std::string, std::string>>;

std::string fmt17(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const std::string& cmd, const KV& config) {
    os << "# stablex " << kVersion << "\n# cmd=" << cmd << '\n';
    for (const auto& [k, v] : config) os << "# " << k << '=' << v << '\n';
}

void write_report(const fs::path& dir, const std::string& cmd, const KV& config,
                  const json& results) {
    json j;
    j["tool"] = std::string("stablex ") + kVersion;
    j["cmd"] = cmd;
    for (const auto& [k, v] : config) j["config"][k] = v;
    j["results"] = results;
    fs::create_directories(dir);
    std::ofstream os(dir / (cmd + "_report.json"));
    os << j.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int cmd_density(double alpha, double t, double xmin, double xmax, int points,
                const std::string& out) {
    auto params = make_params(alpha);
    auto tab = DensityTable::build(params, t, xmin, xmax, points, {}, false);
    const KV config{{"alpha", fmt17(alpha)}, {"t", fmt17(t)},       {"xmin", fmt17(xmin)},
                    {"xmax", fmt17(xmax)},   {"points", std::to_string(points)}};
    fs::create_directories(out);
    {
        std::ofstream os(fs::path(out) / "density.csv");
        write_header(os, "density", config);
        tab.write_csv(os);
    }
    {
        std::ofstream os(fs::path(out) / "density_asymptotics.csv");
        write_header(os, "density", config);
        os << "x,right_coeff,left_exponent_ratio\n";
        for (double x : {2.0, 5.0, 10.0, 20.0, 50.0}) {
            const double right = std::pow(x, alpha + 1.0) * density(params, 1.0, x);
            const double pl = density(params, 1.0, -x);
            const double left =
                pl > 0.0 ? -std::log(pl) / std::pow(x, params.alpha_prime) : 0.0;
            os << fmt17(x) << ',' << fmt17(right) << ',' << fmt17(left) << '\n';
        }
    }
    json res;
    res["rows"] = points;
    res["cdf_final"] = tab.cdf().back();
    write_report(out, "density", config, res);
    return kOk;
}

int cmd_sample(const std::string& kind, double alpha, double a, int n, std::int64_t N,
               std::uint64_t seed, const std::string& out) {
    auto params = make_params(alpha);
    SamplerConfig cfg;
    RngStream root(seed);
    std::vector<PathSkeleton> batch;
    batch.reserve(N);
    for (std::int64_t i = 0; i < N; ++i) {
        RngStream r = root.child(i);
        if (kind == "free")
            batch.push_back(sample_free_path(params, n, r));
        else if (kind == "bridge")
            batch.push_back(sample_bridge(params, a, n, r, cfg));
        else if (kind == "excursion")
            batch.push_back(sample_excursion(params, n, r, cfg));
        else
            throw CLI::ValidationError("--kind must be free|bridge|excursion");
        batch.back().seed = seed;
    }
    const KV config{{"alpha", fmt17(alpha)}, {"kind", kind},
                    {"a", fmt17(a)},         {"n", std::to_string(n)},
                    {"N", std::to_string(N)}, {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "skeletons.csv");
    write_header(os, "sample", config);
    write_skeleton_batch(os, batch);
    json res;
    res["samples"] = N;
    write_report(out, "sample", config, res);
    return kOk;
}

int cmd_rate(const std::string& path_file, double alpha, bool is_bridge, double a,
             const std::string& out) {
    auto params = make_params(alpha);
    std::ifstream is(path_file);
    if (!is) throw CLI::ValidationError("cannot open " + path_file);
    auto path = CadlagPath::read_csv(is);
    const RateValue rv =
        is_bridge ? rate_bridge(params, path, a) : rate_excursion(params, path);
    const KV config{{"alpha", fmt17(alpha)},
                    {"path", path_file},
                    {"bridge", is_bridge ? "1" : "0"},
                    {"a", fmt17(a)}};
    json res;
    res["finite"] = rv.finite();
    res["reason"] = to_string(rv.reason);
    if (rv.finite()) res["value"] = rv.value;
    write_report(out, "rate", config, res);
    if (rv.finite())
        std::cout << fmt17(rv.value) << '\n';
    else
        std::cout << "inf (" << to_string(rv.reason) << ")\n";
    return kOk;
}

int cmd_dist(const std::string& fa, const std::string& fb, double tol, const std::string& out) {
    std::ifstream ia(fa), ib(fb);
    if (!ia || !ib) throw CLI::ValidationError("cannot open input paths");
    auto p1 = CadlagPath::read_csv(ia);
    auto p2 = CadlagPath::read_csv(ib);
    const double d = m1_distance(p1, p2, tol);
    const KV config{{"a", fa}, {"b", fb}, {"tol", fmt17(tol)}};
    json res;
    res["distance"] = d;
    write_report(out, "dist", config, res);
    std::cout << fmt17(d) << '\n';
    return kOk;
}

int cmd_gamma(const std::string& functional, double alpha, int n, const std::string& out) {
    auto params = make_params(alpha);
    GridFunctional phi =
        functional == "area" ? GridFunctional::area() : GridFunctional::sup();
    if (functional != "area" && functional != "sup")
        throw CLI::ValidationError("--functional must be area|sup");
    const double analytic = functional == "area" ? gamma_area(params) : gamma_sup(params);
    auto res = gamma_numeric(params, phi, n);
    const KV config{{"alpha", fmt17(alpha)}, {"functional", functional},
                    {"n", std::to_string(n)}};
    json jr;
    jr["gamma_numeric"] = res.gamma;
    jr["gamma_analytic"] = analytic;
    jr["gap"] = std::abs(res.gamma - analytic);
    jr["iterations"] = res.iterations;
    jr["constraint_residual"] = res.constraint_residual;
    write_report(out, "gamma", config, jr);
    // maximizer in the path CSV format (linear interpolation)
    fs::create_directories(out);
    std::vector<double> t(res.maximizer.size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) / (t.size() - 1);
    auto fpath = CadlagPath::linear_path(t, res.maximizer);
    std::ofstream os(fs::path(out) / "gamma_maximizer.csv");
    write_header(os, "gamma", config);
    fpath.write_csv(os);
    std::cout << "numeric " << fmt17(res.gamma) << "  analytic " << fmt17(analytic) << "  gap "
              << fmt17(std::abs(res.gamma - analytic)) << '\n';
    return kOk;
}

int cmd_tails(double alpha, const std::string& functional, const std::string& kind,
              const std::string& thresholds_csv, std::int64_t N, int n, std::uint64_t seed,
              const std::string& out) {
    auto params = make_params(alpha);
    const TailFunctional f =
        functional == "area" ? TailFunctional::area : TailFunctional::sup;
    const TailKind k = kind == "bridge-sup" ? TailKind::bridge_sup : TailKind::excursion;
    const auto thresholds = parse_list(thresholds_csv);
    auto te = estimate_tail(params, f, k, thresholds, N, n, seed);
    auto fit = fit_ldp_slope(params, te, theory_tail_slope(params, f, k));
    const KV config{{"alpha", fmt17(alpha)},  {"functional", functional},
                    {"kind", kind},           {"thresholds", thresholds_csv},
                    {"N", std::to_string(N)}, {"n", std::to_string(n)},
                    {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    {
        std::ofstream os(fs::path(out) / "tails.csv");
        write_header(os, "tails", config);
        os << "threshold,hits,estimate,wilson_lo,wilson_hi,usable\n";
        for (size_t i = 0; i < te.thresholds.size(); ++i)
            os << fmt17(te.thresholds[i]) << ',' << te.hits[i] << ',' << fmt17(te.estimate[i])
               << ',' << fmt17(te.wilson_lo[i]) << ',' << fmt17(te.wilson_hi[i]) << ','
               << (te.usable[i] ? 1 : 0) << '\n';
    }
    json jr;
    jr["slope"] = fit.slope;
    jr["intercept"] = fit.intercept;
    jr["r2"] = fit.r2;
    jr["slope_se"] = fit.slope_se;
    jr["theory_slope"] = fit.theory_slope;
    jr["relative_deviation"] = fit.relative_deviation;
    jr["points_used"] = fit.points_used;
    write_report(out, "tails", config, jr);
    std::cout << "slope " << fmt17(fit.slope) << "  theory " << fmt17(fit.theory_slope)
              << "  rel.dev " << fmt17(fit.relative_deviation) << '\n';
    return kOk;
}

int cmd_moments(double alpha, const std::string& functional, int kmax, std::int64_t N, int n,
                std::uint64_t seed, const std::string& out) {
    auto params = make_params(alpha);
    const TailFunctional f =
        functional == "area" ? TailFunctional::area : TailFunctional::sup;
    auto mg = moment_growth(params, f, kmax, N, n, seed);
    const KV config{{"alpha", fmt17(alpha)},  {"functional", functional},
                    {"kmax", std::to_string(kmax)}, {"N", std::to_string(N)},
                    {"n", std::to_string(n)}, {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "moments.csv");
    write_header(os, "moments", config);
    os << "k,ratio,jackknife_se,flagged\n";
    json rows = json::array();
    for (const auto& row : mg.rows) {
        os << row.k << ',' << fmt17(row.ratio) << ',' << fmt17(row.se) << ','
           << (row.flagged ? 1 : 0) << '\n';
        rows.push_back({{"k", row.k}, {"ratio", row.ratio}, {"se", row.se}});
    }
    json jr;
    jr["limit"] = mg.limit;
    jr["rows"] = rows;
    write_report(out, "moments", config, jr);
    std::cout << "limit " << fmt17(mg.limit) << "  ratio[kmax] " << fmt17(mg.rows.back().ratio)
              << " +- " << fmt17(mg.rows.back().se) << '\n';
    return kOk;
}

int cmd_laplace(double alpha, const std::string& functional, const std::string& tgrid_csv,
                std::int64_t N, int n, std::uint64_t seed, const std::string& out) {
    auto params = make_params(alpha);
    const TailFunctional f =
        functional == "area" ? TailFunctional::area : TailFunctional::sup;
    auto lg = laplace_growth(params, f, parse_list(tgrid_csv), N, n, seed);
    const KV config{{"alpha", fmt17(alpha)},  {"functional", functional},
                    {"tgrid", tgrid_csv},     {"N", std::to_string(N)},
                    {"n", std::to_string(n)}, {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "laplace_growth.csv");
    write_header(os, "laplace", config);
    os << "t,ratio,top10_share,trusted\n";
    for (const auto& row : lg.rows)
        os << fmt17(row.t) << ',' << fmt17(row.ratio) << ',' << fmt17(row.top10_share) << ','
           << (row.trusted ? 1 : 0) << '\n';
    json jr;
    jr["limit"] = lg.limit;
    write_report(out, "laplace", config, jr);
    return kOk;
}

int cmd_tightness(double alpha, std::int64_t N, std::uint64_t seed, const std::string& out) {
    auto params = make_params(alpha);
    auto res = tightness_moment_check(params, N, seed);
    const KV config{{"alpha", fmt17(alpha)}, {"N", std::to_string(N)},
                    {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "tightness.csv");
    write_header(os, "tightness", config);
    os << "t1,t,t2,lambda,log_mgf\n";
    for (const auto& row : res.rows)
        os << fmt17(row.t1) << ',' << fmt17(row.t) << ',' << fmt17(row.t2) << ','
           << fmt17(row.lambda) << ',' << fmt17(row.log_mgf) << '\n';
    json jr;
    jr["fitted_log_c"] = res.fitted_log_c;
    jr["gap_slope_ratio"] = res.gap_slope_ratio;
    jr["form_pass"] = res.form_pass;
    jr["endpoint_probs"] = res.endpoint_probs;
    jr["endpoint_pass"] = res.endpoint_pass;
    write_report(out, "tightness", config, jr);
    std::cout << (res.form_pass && res.endpoint_pass ? "pass" : "FAIL") << '\n';
    return res.form_pass && res.endpoint_pass ? kOk : kValidationFail;
}

int cmd_probe(double alpha, double delta, const std::string& eps_csv, std::int64_t N, int n,
              std::uint64_t seed, const std::string& out) {
    auto params = make_params(alpha);
    auto res = j1_two_jump_probe(params, delta, parse_list(eps_csv), N, n, seed);
    const KV config{{"alpha", fmt17(alpha)},  {"delta", fmt17(delta)}, {"eps", eps_csv},
                    {"N", std::to_string(N)}, {"n", std::to_string(n)},
                    {"seed", std::to_string(seed)}};
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "two_jump_probe.csv");
    write_header(os, "probe", config);
    os << "eps,hits,p_hat,eps_ap_log_p,residual,trusted\n";
    for (const auto& row : res.rows)
        os << fmt17(row.eps) << ',' << row.hits << ',' << fmt17(row.p_hat) << ','
           << fmt17(row.q_scaled) << ',' << fmt17(row.residual) << ',' << (row.trusted ? 1 : 0)
           << '\n';
    json jr;
    jr["floor_display"] = res.floor_display;
    jr["floor_limit"] = res.floor_limit;
    jr["fitted_log_c"] = res.fitted_log_c;
    jr["pass"] = res.pass;
    jr["soft_warn"] = res.soft_warn;
    write_report(out, "probe", config, jr);
    if (res.soft_warn) std::cerr << "warning: fewer than 2 trusted epsilon entries\n";
    std::cout << (res.pass ? "pass" : "FAIL") << '\n';
    return kOk;  // diagnostic probe: soft acceptance
}

int cmd_validate(double alpha, std::int64_t N, std::uint64_t seed, bool quick,
                 const std::string& out) {
    auto params = make_params(alpha);
    const std::int64_t nm = quick ? std::min<std::int64_t>(N, 20000) : N;
    std::vector<CheckResult> checks;
    for (double a : {0.0, -1.0, 1.0}) {
        auto c = bridge_marginal_checks(params, a, nm, seed, 0.02);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    {
        auto c = skeleton_invariant_checks(params, -1.0, quick ? 2000 : 100000, 256, seed + 1);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    checks.push_back(zero_bridge_reversal_check(params, nm, seed + 2));
    {
        auto c = increment_laplace_checks(params, 1.0, {0.5, 1.0, 2.0}, quick ? 200000 : 1000000,
                                          seed + 3);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    checks.push_back(increment_scaling_check(params, 0.25, nm, seed + 4));
    {
        auto c = excursion_conditional_checks(params, quick ? 3000 : 100000, 512, seed + 5, 0.03);
        checks.insert(checks.end(), c.begin(), c.end());
    }

    const KV config{{"alpha", fmt17(alpha)},
                    {"N", std::to_string(N)},
                    {"seed", std::to_string(seed)},
                    {"quick", quick ? "1" : "0"}};
    json rows = json::array();
    bool all = true;
    for (const auto& c : checks) {
        rows.push_back({{"name", c.name},
                        {"stat", c.stat},
                        {"threshold", c.threshold},
                        {"pass", c.pass},
                        {"detail", c.detail}});
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << "  stat=" << c.stat
                  << "  thr=" << c.threshold << "  " << c.detail << '\n';
        all = all && c.pass;
    }
    json jr;
    jr["checks"] = rows;
    jr["all_pass"] = all;
    write_report(out, "validate", config, jr);
    return all ? kOk : kValidationFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable excursion / bridge large-deviation toolkit"};
    app.set_config("--config", "", "flat key=value config file; flags override");
    app.require_subcommand(1);

    double alpha = 4.0 / 3.0, t = 1.0, xmin = -10.0, xmax = 400.0, a = 0.0, tol = 1e-4,
           delta = 1.0 / 16.0;
    int points = 2048, n = 1024, kmax = 12;
    std::int64_t N = 100000;
    std::uint64_t seed = 0;
    std::string out = ".", kind = "excursion", functional = "area", path_file, file_a, file_b,
                thresholds, tgrid = "0.5,1,2,3,4", eps = "1,1.25,1.5,2";
    bool is_bridge = false, quick = false;

    auto* cd = app.add_subcommand("density", "tabulate p_t and tail diagnostics");
    cd->add_option("--alpha", alpha)->required();
    cd->add_option("--t", t);
    cd->add_option("--xmin", xmin);
    cd->add_option("--xmax", xmax);
    cd->add_option("--points", points);
    cd->add_option("--out", out);

    auto* cs = app.add_subcommand("sample", "draw path skeletons");
    cs->add_option("--kind", kind)->required();
    cs->add_option("--alpha", alpha)->required();
    cs->add_option("--a", a);
    cs->add_option("--n", n);
    cs->add_option("--N", N);
    cs->add_option("--seed", seed)->required();
    cs->add_option("--out", out);

    auto* cr = app.add_subcommand("rate", "evaluate the LDP rate of a path file");
    cr->add_option("--path", path_file)->required();
    cr->add_option("--alpha", alpha)->required();
    cr->add_flag("--bridge", is_bridge);
    cr->add_option("--a", a);
    cr->add_option("--out", out);

    auto* cdist = app.add_subcommand("dist", "M1' distance between two path files");
    cdist->add_option("--a", file_a)->required();
    cdist->add_option("--b", file_b)->required();
    cdist->add_option("--tol", tol);
    cdist->add_option("--out", out);

    auto* cg = app.add_subcommand("gamma", "variational constants");
    cg->add_option("--functional", functional)->required();
    cg->add_option("--alpha", alpha)->required();
    cg->add_option("--n", n);
    cg->add_option("--out", out);

    auto* ct = app.add_subcommand("tails", "tail estimates and LDP slope fit");
    ct->add_option("--alpha", alpha)->required();
    ct->add_option("--functional", functional);
    ct->add_option("--kind", kind);
    ct->add_option("--thresholds", thresholds)->required();
    ct->add_option("--N", N);
    ct->add_option("--n", n);
    ct->add_option("--seed", seed)->required();
    ct->add_option("--out", out);

    auto* cm = app.add_subcommand("moments", "moment growth ratios");
    cm->add_option("--alpha", alpha)->required();
    cm->add_option("--functional", functional);
    cm->add_option("--kmax", kmax);
    cm->add_option("--N", N);
    cm->add_option("--n", n);
    cm->add_option("--seed", seed)->required();
    cm->add_option("--out", out);

    auto* cl = app.add_subcommand("laplace", "laplace growth ratios");
    cl->add_option("--alpha", alpha)->required();
    cl->add_option("--functional", functional);
    cl->add_option("--tgrid", tgrid);
    cl->add_option("--N", N);
    cl->add_option("--n", n);
    cl->add_option("--seed", seed)->required();
    cl->add_option("--out", out);

    auto* cti = app.add_subcommand("tightness", "M-oscillation moment bound checks");
    cti->add_option("--alpha", alpha)->required();
    cti->add_option("--N", N);
    cti->add_option("--seed", seed)->required();
    cti->add_option("--out", out);

    auto* cp = app.add_subcommand("probe", "two-jump J1 probe");
    cp->add_option("--alpha", alpha)->required();
    cp->add_option("--delta", delta);
    cp->add_option("--eps", eps);
    cp->add_option("--N", N);
    cp->add_option("--n", n);
    cp->add_option("--seed", seed)->required();
    cp->add_option("--out", out);

    auto* cv = app.add_subcommand("validate", "sampler KS validations; nonzero exit on failure");
    cv->add_option("--alpha", alpha)->required();
    cv->add_option("--N", N);
    cv->add_option("--seed", seed)->required();
    cv->add_flag("--quick", quick);
    cv->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cd->parsed()) return cmd_density(alpha, t, xmin, xmax, points, out);
        if (cs->parsed()) return cmd_sample(kind, alpha, a, n, N, seed, out);
        if (cr->parsed()) return cmd_rate(path_file, alpha, is_bridge, a, out);
        if (cdist->parsed()) return cmd_dist(file_a, file_b, tol, out);
        if (cg->parsed()) return cmd_gamma(functional, alpha, n, out);
        if (ct->parsed()) return cmd_tails(alpha, functional, kind, thresholds, N, n, seed, out);
        if (cm->parsed()) return cmd_moments(alpha, functional, kmax, N, n, seed, out);
        if (cl->parsed()) return cmd_laplace(alpha, functional, tgrid, N, n, seed, out);
        if (cti->parsed()) return cmd_tightness(alpha, N, seed, out);
        if (cp->parsed()) return cmd_probe(alpha, delta, eps, N, n, seed, out);
        if (cv->parsed()) return cmd_validate(alpha, N, seed, quick, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
