#include "dampwave/experiments.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace dampwave::experiments {

FitResult fit_loglog(const std::vector<double>& ts, const std::vector<double>& vs,
                     double window_lo, double window_hi) {
    FitResult fr;
    fr.window_lo = window_lo;
    fr.window_hi = window_hi;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < window_lo || ts[i] > window_hi)
            continue;
        if (!(vs[i] > 0.0))
            throw InsufficientData("fit_decay: nonpositive value inside the fit window");
        xs.push_back(std::log(1.0 + ts[i]));
        ys.push_back(std::log(vs[i]));
    }
    if (xs.size() < 10)
        throw InsufficientData("fit_decay: fewer than 10 points in window");
    const auto n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    fr.slope = vxy / vxx;
    fr.intercept = (sy - fr.slope * sx) / n;
    fr.r_squared = vyy > 0.0 ? vxy * vxy / (vxx * vyy) : 1.0;
    fr.n_points = int(xs.size());
    return fr;
}

FitResult fit_decay(const std::vector<EnergyReport>& series, const std::string& quantity,
                    double window_lo, double window_hi) {
    std::vector<double> ts, vs;
    ts.reserve(series.size());
    vs.reserve(series.size());
    for (const auto& r : series) {
        ts.push_back(r.t);
        vs.push_back(report_field(r, quantity));
    }
    return fit_loglog(ts, vs, window_lo, window_hi);
}

double critical_exponent(int dim, double lambda) {
    return 1.0 + 4.0 / (dim + 2.0 * lambda);
}

double lifespan_exponent(int dim, double lambda, double p) {
    if (p >= critical_exponent(dim, lambda))
        throw InvalidParameter("lifespan_exponent: requires subcritical p");
    return -1.0 / (1.0 / (p - 1.0) - 0.25 * (dim + 2.0 * lambda));
}

LifespanSweepResult lifespan_sweep(const SimConfig& base, const std::vector<double>& epsilons) {
    if (base.nonlin.kind != NonlinKind::AbsolutePower)
        throw InvalidParameter("lifespan_sweep: requires the absolute_power nonlinearity");
    LifespanSweepResult out;
    out.theoretical_slope =
        lifespan_exponent(base.domain.dim, base.weight.lambda, base.nonlin.p);

    out.records.resize(epsilons.size());
    parallel_for_index(epsilons.size(), [&](std::size_t i) {
        SimConfig cfg = base;
        cfg.data.epsilon = epsilons[i];
        out.records[i] = run_lifespan(cfg, true);
    });
    std::vector<double> eps_fit, tb_fit;
    for (const auto& rec : out.records) {
        if (!rec.survived()) {
            eps_fit.push_back(rec.epsilon);
            tb_fit.push_back(rec.t_blowup);
        }
    }
    if (eps_fit.size() < 4)
        throw SweepInconclusive("lifespan_sweep: fewer than 4 finite blowup times");

    // direct log-log fit of t_blowup against epsilon
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = double(eps_fit.size());
    for (std::size_t i = 0; i < eps_fit.size(); ++i) {
        const double x = std::log(eps_fit[i]);
        const double y = std::log(tb_fit[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    out.fit.slope = vxy / vxx;
    out.fit.intercept = (sy - out.fit.slope * sx) / n;
    out.fit.r_squared = vyy > 0.0 ? vxy * vxy / (vxx * vyy) : 1.0;
    out.fit.n_points = int(eps_fit.size());
    out.fit.window_lo = *std::min_element(eps_fit.begin(), eps_fit.end());
    out.fit.window_hi = *std::max_element(eps_fit.begin(), eps_fit.end());
    return out;
}

SimConfig dichotomy_base(int dim, double lambda, double t_max) {
    SimConfig cfg;
    cfg.domain.dim = dim;
    cfg.domain.geometry = dim == 1 ? Geometry::FullLine : Geometry::RadialExterior;
    cfg.domain.r_in = 1.0;
    cfg.domain.h = 0.1;
    cfg.tau = 0.05;
    cfg.t_max = t_max;
    // the scan lambda may sit at the endpoint N/2; the report weight must
    // stay strictly inside the admissible range
    const double lambda_run = std::min(lambda, 0.95 * 0.5 * dim);
    cfg.weight = weights::WeightParams::make(dim, lambda_run);
    cfg.data.profile = InitialData::Profile::Bump;
    cfg.data.r_cut = 6.0;
    cfg.domain.r_outer = cfg.data.r_cut + cfg.t_max + 6.0 * cfg.domain.h;
    cfg.tilde_weight = dim == 1;
    return cfg;
}

DichotomyScan dichotomy_scan(int dim, double lambda, const std::vector<double>& p_list,
                             double epsilon, const SimConfig* base) {
    DichotomyScan scan;
    scan.dim = dim;
    scan.lambda = lambda;
    scan.p_c = critical_exponent(dim, lambda);
    scan.epsilon = epsilon;
    const SimConfig cfg0 = base ? *base : dichotomy_base(dim, lambda);
    scan.p_values = p_list;
    scan.blew_up.assign(p_list.size(), false);
    std::vector<char> verdicts(p_list.size(), 0);
    parallel_for_index(p_list.size(), [&](std::size_t i) {
        SimConfig cfg = cfg0;
        cfg.nonlin = NonlinearitySpec::make(NonlinKind::AbsolutePower, p_list[i]);
        cfg.data.epsilon = epsilon;
        verdicts[i] = run_lifespan(cfg, false).survived() ? 0 : 1;
    });
    for (std::size_t i = 0; i < p_list.size(); ++i)
        scan.blew_up[i] = verdicts[i] != 0;
    return scan;
}

double find_small_epsilon(const SimConfig& base, int max_iters) {
    double eps = 1.0;
    for (int k = 0; k < max_iters; ++k) {
        SimConfig cfg = base;
        cfg.data.epsilon = eps;
        LifespanRecord rec = run_lifespan(cfg, false);
        if (rec.survived())
            return 0.5 * eps;
        eps *= 0.5;
    }
    throw SweepInconclusive("find_small_epsilon: no surviving amplitude found");
}

SimConfig corollary_preset(int dim, double p) {
    if (p <= 1.0 + 2.0 / dim)
        throw InvalidParameter("corollary_preset: requires p > 1 + 2/N (strict)");
    if (dim >= 3 && p > double(dim) / (dim - 2) + 1e-12)
        throw InvalidParameter("corollary_preset: requires p <= N/(N-2)");

    const double lo = 2.0 / (p - 1.0) - 0.5 * dim;
    const double lambda = lo > 0.0 ? 0.5 * (lo + 0.5 * dim) : 0.0;
    if (p < critical_exponent(dim, lambda) - 1e-12)
        throw InvalidParameter("corollary_preset: chosen lambda misses the global range");

    SimConfig cfg;
    cfg.domain.dim = dim;
    cfg.domain.geometry = dim == 1 ? Geometry::FullLine : Geometry::RadialExterior;
    cfg.domain.r_in = 1.0;
    cfg.domain.h = 0.05;
    cfg.tau = 0.025;
    cfg.t_max = 100.0;
    cfg.weight = weights::WeightParams::make(dim, lambda);
    cfg.nonlin = NonlinearitySpec::make(NonlinKind::OddPower, p);
    cfg.data.profile = InitialData::Profile::PowerTail;
    cfg.data.mu = dim + 0.5; // finite <x>^N-weighted data norm
    cfg.data.r_cut = 40.0;
    cfg.data.epsilon = 0.05;
    cfg.domain.r_outer = cfg.data.r_cut + cfg.t_max + 6.0 * cfg.domain.h;
    cfg.tilde_weight = dim == 1;
    return cfg;
}

SimConfig theorem41_config(double lambda, double p) {
    const double threshold = 1.0 + 4.0 / (1.0 + 2.0 * lambda);
    if (p <= threshold + 1e-12)
        throw InvalidParameter("theorem41: requires p strictly above 1 + 4/(1+2 lambda)");
    if (lambda < 0.0 || lambda >= 0.5)
        throw InvalidParameter("theorem41: lambda must lie in [0, 1/2)");

    SimConfig cfg;
    cfg.domain.dim = 1;
    cfg.domain.geometry = Geometry::FullLine;
    cfg.domain.h = 0.1;
    cfg.tau = 0.05;
    cfg.t_max = 420.0;
    cfg.weight = weights::WeightParams::make(1, lambda);
    cfg.nonlin = NonlinearitySpec::make(NonlinKind::OddPower, p);
    cfg.data.profile = InitialData::Profile::PowerTail;
    // tail strictly inside the weighted data class; the exact borderline
    // exponent drags logarithmic corrections through the fit window
    cfg.data.mu = lambda + 0.9;
    cfg.data.r_cut = 120.0;
    cfg.data.epsilon = 0.05;
    cfg.domain.r_outer = cfg.data.r_cut + cfg.t_max + 6.0 * cfg.domain.h;
    cfg.output_stride = 20;
    cfg.tilde_weight = true;
    return cfg;
}

Theorem41Report theorem41_check(double lambda, double p) {
    Theorem41Report rep;
    rep.lambda = lambda;
    rep.p = p;
    rep.threshold = 1.0 + 4.0 / (1.0 + 2.0 * lambda);

    SimConfig cfg = theorem41_config(lambda, p);
    RunResult rr = run(cfg, {.refine_on_blowup = false, .collect_reports = true});
    if (!rr.record.survived())
        throw SweepInconclusive("theorem41: small-data run blew up unexpectedly");

    rep.energy_fit = fit_decay(rr.series, "energy", 50.0, 400.0);
    rep.mass_fit = fit_decay(rr.series, "l2", 50.0, 400.0);
    rep.passed = rep.energy_fit.slope <= -lambda - 1.0 + 0.15 &&
                 rep.mass_fit.slope <= -lambda + 0.15;
    return rep;
}

} // namespace dampwave::experiments
