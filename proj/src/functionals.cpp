#include "dampwave/functionals.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dampwave {

namespace {

std::vector<double> gradient(const std::vector<double>& u, const Grid& grid) {
    const std::size_t n = u.size();
    std::vector<double> g(n, 0.0);
    const double inv2h = 0.5 / grid.h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        g[i] = (u[i + 1] - u[i - 1]) * inv2h;
    if (n >= 2) {
        g[0] = (u[1] - u[0]) / grid.h;
        g[n - 1] = (u[n - 1] - u[n - 2]) / grid.h;
    }
    return g;
}

std::vector<double> reconstruct_dtu(const FieldState& s) {
    const std::size_t n = s.u.size();
    std::vector<double> v(n, 0.0);
    if (!s.u_next.empty() && !s.u_prev.empty()) {
        const double inv2t = 0.5 / s.tau;
        for (std::size_t i = 0; i < n; ++i)
            v[i] = (s.u_next[i] - s.u_prev[i]) * inv2t;
    } else if (!s.u_prev.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            v[i] = (s.u[i] - s.u_prev[i]) / s.tau;
    }
    return v;
}

} // namespace

EnergyReport compute_report(const FieldState& state, const SimConfig& cfg,
                            const Grid& grid, const EnergyReport* prev) {
    const std::size_t n = state.u.size();
    const double t = state.t;
    const auto& wp = cfg.weight;
    const double lam = wp.lambda;
    const double s0 = wp.t0 + t;
    const double expo = -1.0 + 2.0 * wp.delta;

    const auto dtu = reconstruct_dtu(state);
    const auto grad = gradient(state.u, grid);

    EnergyReport r;
    r.t = t;

    double mass_psi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = state.u[i];
        const double ut = dtu[i];
        const double gu = grad[i];
        const double rad = grid.radius(i);
        const double psi = wp.t0 + t + 0.25 * rad * rad;
        const double psil = std::pow(psi, lam);
        const double tww = std::pow(1.0 + t + rad * rad, lam);
        const double w = grid.qw[i];

        double phi = weights::phi_beta(rad, t, wp.beta, wp);
        if (cfg.tilde_weight)
            phi *= 2.0 - 1.0 / s0;
        const double wphi = std::pow(phi, expo);

        const double g2 = gu * gu;
        const double ut2 = ut * ut;
        const double u2 = u * u;

        r.grad_psi += w * g2 * psil;
        r.ut_psi += w * ut2 * psil;
        mass_psi += w * u2 * psil;
        r.e_tilde += w * (2.0 * u * ut + u2) * wphi;
        r.l2 += w * u2;
        r.h1 += w * (g2 + u2);
        r.energy += w * (g2 + ut2);
        r.theorem_weights.grad += w * g2 * tww;
        r.theorem_weights.dt += w * ut2 * tww;
        r.theorem_weights.mass += w * u2 * tww;
        if (cfg.nonlin.kind != NonlinKind::Zero) {
            const double fv = cfg.nonlin.f(u);
            const double Fv = cfg.nonlin.F(u);
            r.f_term += w * Fv * psil;
            r.uf_term += w * u * fv * psil;
            r.f_abs += w * std::abs(Fv) * psil;
            r.uf_abs += w * std::abs(u * fv) * psil;
        }
        r.sup_u = std::max(r.sup_u, std::abs(u));
    }
    r.e_lambda = s0 * (r.grad_psi + r.ut_psi);
    r.m_lambda = r.e_lambda + mass_psi;

    if (!std::isfinite(r.e_lambda) || !std::isfinite(r.e_tilde) || !std::isfinite(r.m_lambda))
        throw QuadratureOverflow("compute_report: non-finite integrand");

    if (prev) {
        const double dt = t - prev->t;
        auto trap = [dt](double a, double b) { return 0.5 * dt * (a + b); };
        r.y_lambda = prev->y_lambda + trap(prev->grad_psi, r.grad_psi);
        r.z_lambda = prev->z_lambda +
                     trap((wp.t0 + prev->t) * prev->ut_psi, s0 * r.ut_psi);
        r.fg_hist = prev->fg_hist +
                    trap(prev->f_abs + prev->uf_abs, r.f_abs + r.uf_abs);
        r.theorem_weights.grad_hist =
            prev->theorem_weights.grad_hist +
            trap(prev->theorem_weights.grad, r.theorem_weights.grad);
        r.theorem_weights.dt_hist =
            prev->theorem_weights.dt_hist +
            trap((1.0 + prev->t) * prev->theorem_weights.dt,
                 (1.0 + t) * r.theorem_weights.dt);
    }
    return r;
}

RunResult run(const SimConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    RunResult out;
    Grid grid = Grid::make(cfg.domain);
    auto [u0, u1] = make_initial_data(cfg, grid);

    ReportCallback cb;
    if (opts.collect_reports) {
        cb = [&](const FieldState& st) {
            const EnergyReport* prev = out.series.empty() ? nullptr : &out.series.back();
            out.series.push_back(compute_report(st, cfg, grid, prev));
        };
    }

    out.record = integrate(cfg, grid, u0, u1, cb);

    if (opts.refine_on_blowup && !out.record.survived()) {
        SimConfig fine = cfg;
        fine.domain.h *= 0.5;
        fine.tau *= 0.5;
        fine.output_stride *= 2;
        Grid fgrid = Grid::make(fine.domain);
        auto [v0, v1] = make_initial_data(fine, fgrid);
        LifespanRecord frec = integrate(fine, fgrid, v0, v1, nullptr);
        if (!frec.survived())
            out.record.refined_agreement =
                std::abs(out.record.t_blowup - frec.t_blowup) / frec.t_blowup;
    }
    return out;
}

double report_field(const EnergyReport& r, std::string_view name) {
    if (name == "t") return r.t;
    if (name == "e_lambda") return r.e_lambda;
    if (name == "e_tilde") return r.e_tilde;
    if (name == "m_lambda") return r.m_lambda;
    if (name == "y_lambda") return r.y_lambda;
    if (name == "z_lambda") return r.z_lambda;
    if (name == "f_term") return r.f_term;
    if (name == "uf_term") return r.uf_term;
    if (name == "f_abs") return r.f_abs;
    if (name == "uf_abs") return r.uf_abs;
    if (name == "l2") return r.l2;
    if (name == "h1") return r.h1;
    if (name == "energy") return r.energy;
    if (name == "grad_psi") return r.grad_psi;
    if (name == "ut_psi") return r.ut_psi;
    if (name == "fg_hist") return r.fg_hist;
    if (name == "sup_u") return r.sup_u;
    if (name == "tw_energy") return r.theorem_weights.energy();
    if (name == "tw_grad") return r.theorem_weights.grad;
    if (name == "tw_dt") return r.theorem_weights.dt;
    if (name == "tw_mass") return r.theorem_weights.mass;
    if (name == "tw_grad_hist") return r.theorem_weights.grad_hist;
    if (name == "tw_dt_hist") return r.theorem_weights.dt_hist;
    throw InvalidParameter("unknown report field: " + std::string(name));
}

const std::vector<std::string>& report_field_names() {
    static const std::vector<std::string> names = {
        "t",        "e_lambda", "e_tilde",  "m_lambda", "y_lambda", "z_lambda",
        "f_term",   "uf_term",  "f_abs",    "uf_abs",   "l2",       "h1",
        "energy",   "grad_psi", "ut_psi",   "fg_hist",  "sup_u",    "tw_energy",
        "tw_grad",  "tw_dt",    "tw_mass",  "tw_grad_hist", "tw_dt_hist"};
    return names;
}

namespace {

constexpr double kMonitorTol = 1e-3;

double scale_of(double lhs, double rhs) {
    return std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

MonitorVerdict diff_inequality_monitor(
    const std::string& name, const std::vector<EnergyReport>& series,
    const std::function<double(const EnergyReport&)>& quantity,
    const std::function<double(const EnergyReport&)>& rhs_static,
    const std::function<double(const EnergyReport&)>& rhs_ddt) {
    MonitorVerdict v;
    v.name = name;
    if (series.size() < 3)
        throw InsufficientData(name + ": need at least 3 reports");
    v.passed = true;
    v.worst_margin = std::numeric_limits<double>::max();
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double dt = series[i + 1].t - series[i - 1].t;
        const double lhs = (quantity(series[i + 1]) - quantity(series[i - 1])) / dt;
        double rhs = rhs_static(series[i]);
        if (rhs_ddt)
            rhs += (rhs_ddt(series[i + 1]) - rhs_ddt(series[i - 1])) / dt;
        const double margin = (rhs - lhs) / scale_of(lhs, rhs);
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = series[i].t;
        }
    }
    v.passed = v.worst_margin >= -kMonitorTol;
    return v;
}

} // namespace

MonitorVerdict check_lemma32(const std::vector<EnergyReport>& series, const SimConfig& cfg) {
    const double lam = cfg.weight.lambda;
    const double t0 = cfg.weight.t0;
    return diff_inequality_monitor(
        "lemma32", series,
        [](const EnergyReport& r) { return r.e_lambda; },
        [lam, t0](const EnergyReport& r) {
            return (lam * lam + lam + 1.0) * r.grad_psi +
                   (lam + 1.0 - t0 - r.t) * r.ut_psi + 2.0 * (lam + 1.0) * r.f_term;
        },
        [t0](const EnergyReport& r) { return 2.0 * (t0 + r.t) * r.f_term; });
}

MonitorVerdict check_lemma33(const std::vector<EnergyReport>& series, const SimConfig& cfg,
                             const weights::WeightBounds& wb_beta,
                             const weights::WeightBounds& wb_beta1) {
    const auto& wp = cfg.weight;
    const double delta = wp.delta;
    const double beta = wp.beta;
    const double c = wb_beta.c_hat;
    const double C = wb_beta.C_hat;
    const double C1 = wb_beta1.C_hat;
    const double one_m2d = 1.0 - 2.0 * delta;

    double cross = 0.0;
    if (beta > 0.0) {
        const double K = inequalities::k_lambda(wp.dim, wp.lambda);
        cross = one_m2d * beta * C1 / (c * K);
    }
    const double A = (2.0 + cross) / std::pow(c, one_m2d);
    const double B = (beta > 0.0 ? one_m2d * beta * C1 / (std::pow(c, 2.0 - 2.0 * delta) * wp.t0)
                                 : 0.0) -
                     2.0 * delta / ((1.0 - delta) * std::pow(C, one_m2d));
    const double fcoef = 2.0 / std::pow(c, one_m2d);

    return diff_inequality_monitor(
        "lemma33", series,
        [](const EnergyReport& r) { return r.e_tilde; },
        [A, B, fcoef](const EnergyReport& r) {
            return A * r.ut_psi + B * r.grad_psi + fcoef * r.uf_abs;
        },
        nullptr);
}

double equivalence_nu(const SimConfig& cfg, const weights::WeightBounds& wb_beta) {
    const auto& wp = cfg.weight;
    return (1.0 - wp.delta) / wp.delta * std::pow(wb_beta.C_hat, 1.0 - 2.0 * wp.delta) *
           (wp.lambda * wp.lambda + wp.lambda + 2.0);
}

MonitorVerdict check_equivalence(const std::vector<EnergyReport>& series, const SimConfig& cfg,
                                 double nu, const weights::WeightBounds& wb_beta) {
    const auto& wp = cfg.weight;
    const double need = std::pow(wb_beta.c_hat, -1.0 + 2.0 * wp.delta) * nu;
    if (wp.t0 < need - 1e-9)
        throw InvalidParameter("check_equivalence: t0 must be >= c_hat^{-1+2delta} nu = " +
                               std::to_string(need));
    MonitorVerdict v;
    v.name = "equivalence";
    v.gamma_hat = std::numeric_limits<double>::max();
    v.Gamma_hat = -std::numeric_limits<double>::max();
    bool any = false;
    for (const auto& r : series) {
        if (r.m_lambda < 1e-14)
            continue;
        const double ratio = (r.e_lambda + nu * r.e_tilde) / r.m_lambda;
        any = true;
        if (ratio < v.gamma_hat) {
            v.gamma_hat = ratio;
            v.worst_time = r.t;
        }
        v.Gamma_hat = std::max(v.Gamma_hat, ratio);
    }
    if (!any) {
        v.skipped = true;
        v.passed = true;
        v.detail = "all reports below mass floor";
        return v;
    }
    v.worst_margin = v.gamma_hat;
    v.passed = v.gamma_hat > 0.0;
    return v;
}

WeeResult check_wee(const std::vector<EnergyReport>& series, const SimConfig& cfg) {
    WeeResult out;
    out.verdict.name = "wee";
    if (series.empty())
        throw InsufficientData("check_wee: empty series");
    const double t0 = cfg.weight.t0;
    const double m0 = series.front().m_lambda;
    const double fabs0 = series.front().f_abs;

    std::vector<double> ratios;
    std::vector<double> times;
    for (const auto& r : series) {
        const double denom = r.m_lambda + r.y_lambda + r.z_lambda;
        if (denom < 1e-14)
            continue;
        const double rhs = m0 + fabs0 + (t0 + r.t) * r.f_abs + r.fg_hist;
        ratios.push_back(rhs / denom);
        times.push_back(r.t);
    }
    if (ratios.empty()) {
        out.verdict.skipped = true;
        out.verdict.passed = true;
        out.verdict.detail = "zero solution";
        return out;
    }
    const auto it = std::min_element(ratios.begin(), ratios.end());
    out.eta_hat = *it;
    out.verdict.worst_margin = out.eta_hat;
    out.verdict.worst_time = times[std::distance(ratios.begin(), it)];

    const std::size_t q0 = ratios.size() - ratios.size() / 4;
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (std::size_t i = q0; i < ratios.size(); ++i) {
        lo = std::min(lo, ratios[i]);
        hi = std::max(hi, ratios[i]);
    }
    const double variation = hi > 0.0 ? (hi - lo) / hi : 1.0;
    out.verdict.passed = out.eta_hat > 0.0 && variation < 0.2;
    out.verdict.detail = "last-quarter variation " + std::to_string(variation);
    return out;
}

MonitorVerdict check_critical_interpolation(const FieldState& state, const SimConfig& cfg,
                                            const Grid& grid, double c_gn_q) {
    const auto& wp = cfg.weight;
    const int dim = wp.dim;
    const double lam = wp.lambda;
    if (!(lam > 0.0) || !(lam < 0.5 * dim))
        throw InvalidParameter("check_critical_interpolation: requires 0 < lambda < N/2");

    const double p = 1.0 + 4.0 / (dim + 2.0 * lam);
    const double q = 1.0 + 4.0 / dim;
    const double theta = double(dim) / (dim + 2.0 * lam);
    // chain constant assembled from the empirical GN constant at q = 1+4/N
    // and the proof-backed Hardy constant K^2/4
    const double K = inequalities::k_lambda(dim, lam);
    const double c_star = std::pow(c_gn_q, q + 1.0) * std::pow(1.0 + lam / K, 2.0);
    const double c_hat = std::pow(c_star, theta) * std::pow(0.25 * K * K, theta - 1.0);

    const auto grad = gradient(state.u, grid);
    double lhs = 0.0, grad_psi = 0.0, mass_psi = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        const double rad = grid.radius(i);
        const double psil = std::pow(wp.t0 + state.t + 0.25 * rad * rad, lam);
        const double w = grid.qw[i];
        lhs += w * std::pow(std::abs(state.u[i]), p + 1.0) * psil;
        grad_psi += w * grad[i] * grad[i] * psil;
        mass_psi += w * state.u[i] * state.u[i] * psil;
    }

    MonitorVerdict v;
    v.name = "critical_interpolation";
    const double denom = grad_psi * std::pow(mass_psi, 0.5 * (p - 1.0));
    if (denom < 1e-30) {
        v.skipped = lhs < 1e-30;
        v.passed = v.skipped;
        v.detail = "degenerate state";
        return v;
    }
    const double ratio = lhs / denom;
    v.worst_margin = c_hat - ratio;
    v.detail = "ratio " + std::to_string(ratio) + " vs C " + std::to_string(c_hat);
    v.passed = ratio <= 1.05 * c_hat;
    return v;
}

} // namespace dampwave
