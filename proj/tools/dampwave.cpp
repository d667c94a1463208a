// Command-line front door: config parsing, subcommand dispatch, seeded and
// reproducible outputs (NDJSON / CSV / JSON verdicts, optional SVG).

#include "dampwave/config.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/experiments.hpp"
#include "dampwave/functionals.hpp"
#include "dampwave/inequalities.hpp"
#include "dampwave/io.hpp"
#include "dampwave/specfun.hpp"
#include "dampwave/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace dampwave;
using nlohmann::json;

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1)
            s += ' ';
        s += argv[i];
    }
    return s;
}

io::RunManifest make_manifest(const std::string& command, const std::string& canonical,
                              std::uint64_t seed, std::vector<std::string> outputs = {}) {
    io::RunManifest m;
    m.command = command;
    m.config_hash = io::fnv1a_hex(canonical);
    m.seed = seed;
    m.outputs = std::move(outputs);
    return m;
}

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

void write_sidecar_manifest(const std::string& out_path, const io::RunManifest& m) {
    std::ofstream f(out_path + ".manifest.json");
    f << io::manifest_json(m).dump() << "\n";
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            vals.push_back(std::stod(tok));
    return vals;
}

Grid inequality_grid(int dim) {
    DomainSpec dom;
    dom.dim = dim;
    dom.geometry = Geometry::RadialExterior;
    dom.r_in = 1.0;
    dom.r_outer = 26.0;
    dom.h = 0.005;
    return Grid::make(dom);
}

// --- subcommand bodies -----------------------------------------------------

int cmd_simulate(const std::string& cfg_path, const std::string& out_path,
                 const std::string& cmdline) {
    auto pc = config::parse_config(cfg_path);
    RunResult rr = run(pc.sim, {.refine_on_blowup = true, .collect_reports = true});

    auto manifest = make_manifest(cmdline, pc.canonical_text(), pc.seed,
                                  out_path.empty() ? std::vector<std::string>{}
                                                   : std::vector<std::string>{out_path});
    json tail;
    tail["survived"] = rr.record.survived();
    if (!rr.record.survived()) {
        tail["t_blowup"] = rr.record.t_blowup;
        if (std::isfinite(rr.record.refined_agreement))
            tail["refined_agreement"] = rr.record.refined_agreement;
    }
    tail["tail_norm_discarded"] = tail_norm_estimate(pc.sim);

    if (out_path.empty()) {
        io::write_ndjson(std::cout, rr.series);
        json m = io::manifest_json(manifest);
        m["result"] = tail;
        std::cerr << m.dump() << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f)
            throw ConfigInvalid("cannot open output file: " + out_path);
        io::write_ndjson(f, rr.series);
        json m = io::manifest_json(manifest);
        m["result"] = tail;
        std::ofstream mf(out_path + ".manifest.json");
        mf << m.dump() << "\n";
        emit_json(m);
    }
    return 0;
}

int cmd_verify_weights(bool selftest, int dim, double beta, double t0, long samples,
                       std::uint64_t seed, const std::string& cmdline) {
    std::ostringstream canon;
    canon << "selftest=" << selftest << " dim=" << dim << " beta=" << beta
          << " t0=" << t0 << " samples=" << samples << " seed=" << seed;
    auto manifest = make_manifest(cmdline, canon.str(), seed);

    if (selftest) {
        using namespace specfun;
        std::mt19937_64 rng(seed ? seed : 1);
        std::uniform_real_distribution<double> par(-3.0, 3.0), arg(-15.0, 15.0);
        int checks = 0;
        double worst = 0.0;
        for (int k = 0; k < 500; ++k) {
            const double a = par(rng);
            const double c = 0.4 + std::abs(par(rng));
            const double z = arg(rng);
            const double lhs = kummer_m(a, c, z);
            const double rhs = std::exp(z) * kummer_m(c - a, c, -z);
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
            const double d = kummer_m_derivative(a, c, z);
            worst = std::max(worst, std::abs(d - a / c * kummer_m(a + 1, c + 1, z)));
            ++checks;
        }
        const auto wp = weights::WeightParams::make(3, 1.0, t0);
        for (double r : {0.0, 1.0, 7.5, 40.0}) {
            const auto d = weights::phi_beta_derivatives(r, 2.0, 1.2, wp);
            worst = std::max(worst, std::abs(d.dt - d.laplacian) /
                                        std::max(1e-300, std::abs(d.value)));
            ++checks;
        }
        const bool ok = worst <= 1e-8;
        json j{{"selftest", ok ? "ok" : "failed"}, {"checks", checks}, {"worst_residual", worst}};
        j["manifest"] = io::manifest_json(manifest);
        emit_json(j);
        return ok ? 0 : 1;
    }

    const auto wp = weights::WeightParams::make(dim, 0.0, t0);
    weights::CertifyOptions opts;
    opts.random_samples = samples;
    opts.seed = seed;
    const auto wb = weights::certify_bounds(beta, wp, opts);
    json j{{"beta", wb.beta},
           {"c_hat", wb.c_hat},
           {"C_hat", wb.C_hat},
           {"sample_count", wb.sample_count},
           {"max_abscissa", wb.max_abscissa},
           {"dim", dim}};
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    return 0;
}

int cmd_verify_inequalities(const std::string& lemma, int dim, double lambda, double p,
                            long trials, std::uint64_t seed, const std::string& cmdline) {
    namespace ineq = inequalities;
    std::ostringstream canon;
    canon << "lemma=" << lemma << " dim=" << dim << " lambda=" << lambda << " p=" << p
          << " trials=" << trials << " seed=" << seed;
    auto manifest = make_manifest(cmdline, canon.str(), seed);

    Grid grid = inequality_grid(dim);
    const auto wp = weights::WeightParams::make(dim, std::min(lambda, 0.49 * dim));
    ineq::TestFunctionSpec spec;
    spec.r_support = 20.0;

    json j;
    j["lemma"] = lemma;
    j["dim"] = dim;
    j["trials"] = trials;
    bool ok = true;

    if (lemma == "hardy") {
        if (lambda <= 1.0 - 0.5 * dim + 1e-15) {
            j["verdict"] = "SKIPPED";
            j["reason"] = "K(lambda) <= 0, inequality carries no content";
            j["manifest"] = io::manifest_json(manifest);
            emit_json(j);
            return 0;
        }
        double worst = 0.0, worst_printed = 0.0;
        for (long s = 0; s < trials; ++s) {
            spec.seed = seed + std::uint64_t(s);
            auto fn = ineq::make_test_function(spec, grid);
            auto res = ineq::hardy_check(fn.sample(grid), grid, lambda, 0.0, wp);
            if (res.skipped)
                continue;
            worst = std::max(worst, res.ratio);
            worst_printed = std::max(worst_printed, res.ratio_printed);
        }
        ok = worst <= 1.0 + 1e-6;
        j["worst_ratio"] = worst;
        j["worst_ratio_printed_constant"] = worst_printed;
    } else if (lemma == "gn") {
        auto est = ineq::estimate_gn_constant(grid, p, trials, seed, spec);
        j["c_gn"] = est.value;
        // dilation invariance probe on a wide in-domain bump
        ineq::TestFunction wide;
        wide.cut_lo = 4.0;
        wide.cut_hi = 12.0;
        wide.ramp = 1.0;
        wide.bumps = {{1.0, 8.0, 1.5}};
        const double r1 = ineq::gn_quotient(wide.sample(grid), grid, p);
        double dev = 0.0;
        for (double mu : {0.5, 2.0})
            dev = std::max(dev, std::abs(ineq::gn_quotient(wide.sample(grid, mu), grid, p) / r1 - 1.0));
        ok = dev <= 1e-4;
        j["dilation_deviation"] = dev;
    } else if (lemma == "wgn") {
        auto est = ineq::estimate_gn_constant(grid, p, trials, seed, spec);
        double worst = 0.0;
        for (double t : {0.0, 10.0, 100.0}) {
            for (long s = 0; s < trials; ++s) {
                spec.seed = seed + std::uint64_t(s);
                auto fn = ineq::make_test_function(spec, grid);
                auto res = ineq::weighted_gn_check(fn.sample(grid), grid, p, lambda, t, wp, est.value);
                if (!res.skipped)
                    worst = std::max(worst, res.ratio);
            }
        }
        ok = worst <= 1.05;
        j["c_gn"] = est.value;
        j["c_tilde"] = ineq::weighted_gn_constant(est.value, dim, p, lambda);
        j["worst_ratio"] = worst;
    } else if (lemma == "ibp") {
        const double beta = wp.beta;
        const double delta = wp.delta;
        double worst = 1e300;
        for (long s = 0; s < trials; ++s) {
            spec.seed = seed + std::uint64_t(s);
            auto fn = ineq::make_test_function(spec, grid);
            auto res = ineq::ibp_check(fn.sample(grid), grid, beta, delta, 0.0, wp);
            if (!res.skipped)
                worst = std::min(worst, res.margin);
        }
        ok = worst >= -1e-3;
        j["beta"] = beta;
        j["delta"] = delta;
        j["worst_margin"] = worst;
    } else {
        throw ConfigInvalid("unknown lemma: " + lemma);
    }

    j["verdict"] = ok ? "PASS" : "FAIL";
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    return ok ? 0 : 1;
}

int cmd_fit_decay(const std::string& input, const std::string& quantity, double lo, double hi,
                  const std::string& svg, const std::string& cmdline) {
    std::ifstream f(input);
    if (!f)
        throw ConfigInvalid("cannot open input file: " + input);
    auto [ts, vs] = io::read_ndjson_field(f, quantity);
    auto fit = experiments::fit_loglog(ts, vs, lo, hi);

    std::vector<std::string> outputs;
    if (!svg.empty()) {
        std::ofstream sf(svg);
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] < lo || ts[i] > hi || !(vs[i] > 0.0))
                continue;
            xs.push_back(1.0 + ts[i]);
            ys.push_back(vs[i]);
        }
        io::write_svg_loglog(sf, xs, ys, fit.slope, fit.intercept, "1+t", quantity);
        outputs.push_back(svg);
    }

    auto manifest = make_manifest(cmdline, input + "|" + quantity, 0, outputs);
    json j{{"quantity", quantity},
           {"slope", fit.slope},
           {"intercept", fit.intercept},
           {"r_squared", fit.r_squared},
           {"window", {fit.window_lo, fit.window_hi}},
           {"n_points", fit.n_points}};
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    return 0;
}

int cmd_sweep_lifespan(int dim, double lambda, double p, const std::string& eps_csv,
                       double r_cut, double t_max, double h, const std::string& out,
                       const std::string& svg, const std::string& cmdline) {
    SimConfig base;
    base.domain.dim = dim;
    base.domain.geometry = dim == 1 ? Geometry::FullLine : Geometry::RadialExterior;
    base.domain.r_in = 1.0;
    base.domain.h = h;
    base.tau = 0.5 * h;
    base.t_max = t_max;
    base.weight = weights::WeightParams::make(dim, lambda);
    base.nonlin = NonlinearitySpec::make(NonlinKind::AbsolutePower, p);
    base.data.profile = InitialData::Profile::PowerTail;
    base.data.mu = 0.5 * dim + lambda;
    base.data.r_cut = r_cut;
    base.domain.r_outer = r_cut + t_max + 6.0 * h;
    base.tilde_weight = dim == 1;

    const auto eps = parse_list(eps_csv);
    auto res = experiments::lifespan_sweep(base, eps);

    std::vector<std::string> outputs;
    if (!out.empty()) {
        std::ofstream f(out);
        io::write_csv_lifespan(f, res.records);
        outputs.push_back(out);
    } else {
        io::write_csv_lifespan(std::cout, res.records);
    }
    if (!svg.empty()) {
        std::vector<double> xs, ys;
        for (const auto& r : res.records)
            if (!r.survived()) {
                xs.push_back(r.epsilon);
                ys.push_back(r.t_blowup);
            }
        std::ofstream sf(svg);
        io::write_svg_loglog(sf, xs, ys, res.fit.slope, res.fit.intercept, "epsilon", "t_blowup");
        outputs.push_back(svg);
    }

    std::ostringstream canon;
    canon << "dim=" << dim << " lambda=" << lambda << " p=" << p << " eps=" << eps_csv
          << " r_cut=" << r_cut << " t_max=" << t_max << " h=" << h;
    auto manifest = make_manifest(cmdline, canon.str(), 0, outputs);
    json j{{"slope", res.fit.slope},
           {"theoretical_slope", res.theoretical_slope},
           {"r_squared", res.fit.r_squared},
           {"n_finite", res.fit.n_points}};
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    if (!out.empty())
        write_sidecar_manifest(out, manifest);
    return 0;
}

int cmd_scan_dichotomy(int dim, double lambda, const std::string& p_csv, double epsilon,
                       double t_max, const std::string& out, const std::string& cmdline) {
    const auto ps = parse_list(p_csv);
    SimConfig base = experiments::dichotomy_base(dim, lambda, t_max);
    auto scan = experiments::dichotomy_scan(dim, lambda, ps, epsilon, &base);

    if (!out.empty()) {
        std::ofstream f(out);
        io::write_csv_dichotomy(f, scan);
    } else {
        io::write_csv_dichotomy(std::cout, scan);
    }

    std::ostringstream canon;
    canon << "dim=" << dim << " lambda=" << lambda << " p_list=" << p_csv
          << " epsilon=" << epsilon << " t_max=" << t_max;
    auto manifest = make_manifest(cmdline, canon.str(), 0,
                                  out.empty() ? std::vector<std::string>{}
                                              : std::vector<std::string>{out});
    json verdicts = json::array();
    for (std::size_t i = 0; i < scan.p_values.size(); ++i)
        verdicts.push_back({{"p", scan.p_values[i]},
                            {"verdict", scan.blew_up[i] ? "blew_up" : "survived"}});
    json j{{"p_c", scan.p_c}, {"epsilon", scan.epsilon}, {"cells", verdicts}};
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    if (!out.empty())
        write_sidecar_manifest(out, manifest);
    return 0;
}

int cmd_theorem41(double lambda, double p, const std::string& cmdline) {
    auto rep = experiments::theorem41_check(lambda, p);
    std::ostringstream canon;
    canon << "lambda=" << lambda << " p=" << p;
    auto manifest = make_manifest(cmdline, canon.str(), 0);
    json j{{"lambda", rep.lambda},
           {"p", rep.p},
           {"threshold", rep.threshold},
           {"energy_slope", rep.energy_fit.slope},
           {"energy_bound", -lambda - 1.0 + 0.15},
           {"mass_slope", rep.mass_fit.slope},
           {"mass_bound", -lambda + 0.15},
           {"passed", rep.passed}};
    j["manifest"] = io::manifest_json(manifest);
    emit_json(j);
    return rep.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for weighted-energy analysis of the damped wave equation"};
    app.require_subcommand(1);
    const std::string cmdline = join_args(argc, argv);

    auto* sim = app.add_subcommand("simulate", "integrate one configuration, emit NDJSON reports");
    std::string cfg_path, out_path;
    sim->add_option("--config", cfg_path, "flat key=value config file")->required();
    sim->add_option("--out", out_path, "write NDJSON here instead of stdout");

    auto* vw = app.add_subcommand("verify-weights", "weight-family identity checks / bound certification");
    bool selftest = false;
    int vw_dim = 2;
    double vw_beta = 0.5, vw_t0 = 1.0;
    long vw_samples = 0;
    std::uint64_t vw_seed = 1;
    vw->add_flag("--selftest", selftest, "run special-function identity spot checks");
    vw->add_option("--dim", vw_dim);
    vw->add_option("--beta", vw_beta);
    vw->add_option("--t0", vw_t0);
    vw->add_option("--samples", vw_samples, "extra random samples");
    vw->add_option("--seed", vw_seed);

    auto* vi = app.add_subcommand("verify-inequalities", "seeded functional-inequality suites");
    std::string lemma = "hardy";
    int vi_dim = 2;
    double vi_lambda = 0.5, vi_p = 2.0;
    long vi_trials = 200;
    std::uint64_t vi_seed = 1;
    vi->add_option("--lemma", lemma, "hardy|gn|wgn|ibp")->required();
    vi->add_option("--dim", vi_dim);
    vi->add_option("--lambda", vi_lambda);
    vi->add_option("--p", vi_p);
    vi->add_option("--trials", vi_trials);
    vi->add_option("--seed", vi_seed);

    auto* fd = app.add_subcommand("fit-decay", "log-log slope of one NDJSON quantity");
    std::string fd_input, fd_quantity, fd_svg;
    double fd_lo = 50.0, fd_hi = 400.0;
    fd->add_option("--input", fd_input)->required();
    fd->add_option("--quantity", fd_quantity)->required();
    fd->add_option("--window-lo", fd_lo);
    fd->add_option("--window-hi", fd_hi);
    fd->add_option("--svg", fd_svg, "write a log-log plot here");

    auto* sl = app.add_subcommand("sweep-lifespan", "blowup-time scaling in the data amplitude");
    int sl_dim = 1;
    double sl_lambda = 0.0, sl_p = 1.5, sl_rcut = 100.0, sl_tmax = 500.0, sl_h = 0.05;
    std::string sl_eps = "0.0025,0.00125,0.000625,0.0003125,0.00015625";
    std::string sl_out, sl_svg;
    sl->add_option("--dim", sl_dim);
    sl->add_option("--lambda", sl_lambda);
    sl->add_option("--p", sl_p);
    sl->add_option("--epsilons", sl_eps, "comma-separated amplitudes");
    sl->add_option("--r-cut", sl_rcut);
    sl->add_option("--t-max", sl_tmax);
    sl->add_option("--h", sl_h);
    sl->add_option("--out", sl_out, "CSV output path");
    sl->add_option("--svg", sl_svg);

    auto* sd = app.add_subcommand("scan-dichotomy", "survival vs blowup across p");
    int sd_dim = 2;
    double sd_lambda = 1.0, sd_eps = 0.125, sd_tmax = 200.0;
    std::string sd_p = "1.3,1.7,2.1,2.5";
    std::string sd_out;
    sd->add_option("--dim", sd_dim);
    sd->add_option("--lambda", sd_lambda);
    sd->add_option("--p-list", sd_p);
    sd->add_option("--epsilon", sd_eps);
    sd->add_option("--t-max", sd_tmax);
    sd->add_option("--out", sd_out, "CSV output path");

    auto* t41 = app.add_subcommand("theorem41", "one-dimensional decay-rate verification");
    double t41_lambda = 0.0, t41_p = 6.0;
    t41->add_option("--lambda", t41_lambda);
    t41->add_option("--p", t41_p);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::cerr << json{{"error", "UnknownCommand"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (*sim)
            return cmd_simulate(cfg_path, out_path, cmdline);
        if (*vw)
            return cmd_verify_weights(selftest, vw_dim, vw_beta, vw_t0, vw_samples, vw_seed, cmdline);
        if (*vi)
            return cmd_verify_inequalities(lemma, vi_dim, vi_lambda, vi_p, vi_trials, vi_seed, cmdline);
        if (*fd)
            return cmd_fit_decay(fd_input, fd_quantity, fd_lo, fd_hi, fd_svg, cmdline);
        if (*sl)
            return cmd_sweep_lifespan(sl_dim, sl_lambda, sl_p, sl_eps, sl_rcut, sl_tmax, sl_h,
                                      sl_out, sl_svg, cmdline);
        if (*sd)
            return cmd_scan_dichotomy(sd_dim, sd_lambda, sd_p, sd_eps, sd_tmax, sd_out, cmdline);
        if (*t41)
            return cmd_theorem41(t41_lambda, t41_p, cmdline);
    } catch (const ConfigInvalid& e) {
        std::cerr << json{{"error", "ConfigInvalid"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << json{{"error", "InvalidParameter"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", "RunFailure"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
