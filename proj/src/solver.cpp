#include "dampwave/solver.hpp"
#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dampwave {

NonlinearitySpec NonlinearitySpec::make(NonlinKind kind, double p) {
    if (kind != NonlinKind::Zero && p <= 1.0)
        throw InvalidParameter("nonlinearity: p must exceed 1");
    NonlinearitySpec n;
    n.kind = kind;
    n.p = p;
    n.c_f = p;
    return n;
}

double NonlinearitySpec::f(double u) const {
    switch (kind) {
    case NonlinKind::Zero:
        return 0.0;
    case NonlinKind::OddPower:
        return std::pow(std::abs(u), p - 1.0) * u;
    case NonlinKind::AbsolutePower:
        return std::pow(std::abs(u), p);
    }
    return 0.0;
}

double NonlinearitySpec::F(double u) const {
    switch (kind) {
    case NonlinKind::Zero:
        return 0.0;
    case NonlinKind::OddPower:
        return std::pow(std::abs(u), p + 1.0) / (p + 1.0);
    case NonlinKind::AbsolutePower:
        return std::copysign(std::pow(std::abs(u), p + 1.0) / (p + 1.0), u);
    }
    return 0.0;
}

void SimConfig::validate() const {
    domain.validate();
    if (tau <= 0.0)
        throw ConfigInvalid("tau must be positive");
    if (tau > 0.5 * domain.h + 1e-15)
        throw ConfigInvalid("CFL violated: tau must be <= 0.5 h");
    if (t_max <= 0.0)
        throw ConfigInvalid("t_max must be positive");
    if (blowup_threshold <= 0.0)
        throw ConfigInvalid("blowup_threshold must be positive");
    if (output_stride < 1)
        throw ConfigInvalid("output_stride must be >= 1");
    if (weight.dim != domain.dim)
        throw ConfigInvalid("weight dimension does not match domain dimension");
    if (tilde_weight && domain.dim != 1)
        throw ConfigInvalid("tilde_weight requires dim = 1");
    if (nonlin.kind != NonlinKind::Zero) {
        if (nonlin.p <= 1.0)
            throw ConfigInvalid("nonlinearity exponent p must exceed 1");
        if (domain.dim >= 3 && nonlin.p > double(domain.dim) / (domain.dim - 2) + 1e-12)
            throw ConfigInvalid("p exceeds dim/(dim-2)");
    }
    if (data.profile != InitialData::Profile::Zero && !forcing) {
        // propagation-cone rule: the truncation boundary must stay outside
        // the support of the solution for the whole run
        if (domain.r_outer < data.r_cut + t_max + 5.0 * domain.h - 1e-12)
            throw ConfigInvalid("r_outer must be >= r_cut + t_max + 5 h");
    }
}

namespace {

// C^infty bump, equal to 1 at s = 0, supported on |s| < 1.
double mollifier(double s) {
    const double q = 1.0 - s * s;
    if (q <= 0.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

// C^infty step: 0 for s <= 0, 1 for s >= 1.
double smoothstep(double s) {
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

double profile_value(const SimConfig& cfg, double x) {
    const auto& d = cfg.data;
    const bool radial = cfg.domain.geometry == Geometry::RadialExterior;
    const double r = std::abs(x);
    switch (d.profile) {
    case InitialData::Profile::Zero:
        return 0.0;
    case InitialData::Profile::Bump: {
        if (radial) {
            const double m = 0.5 * (cfg.domain.r_in + d.r_cut);
            const double w = 0.45 * (d.r_cut - cfg.domain.r_in);
            return d.epsilon * mollifier((r - m) / w);
        }
        return d.epsilon * mollifier(x / d.r_cut);
    }
    case InitialData::Profile::PowerTail: {
        const double tail = std::pow(1.0 + r * r, -0.5 * d.mu);
        double cut = smoothstep((d.r_cut - r) / (0.2 * d.r_cut));
        if (radial)
            cut *= smoothstep(r - cfg.domain.r_in);
        return d.epsilon * tail * cut;
    }
    }
    return 0.0;
}

struct Stepper {
    const SimConfig& cfg;
    const Grid& grid;
    double inv_h2;
    std::vector<double> lap;

    Stepper(const SimConfig& c, const Grid& g)
        : cfg(c), grid(g), inv_h2(1.0 / (g.h * g.h)), lap(g.size(), 0.0) {}

    void laplacian(const std::vector<double>& u) {
        const std::size_t n = u.size();
        const bool radial = grid.geometry == Geometry::RadialExterior;
        const double half_inv_h = 0.5 / grid.h;
        const double nm1 = grid.dim - 1;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double v = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
            if (radial)
                v += nm1 / grid.x[i] * (u[i + 1] - u[i - 1]) * half_inv_h;
            lap[i] = v;
        }
        lap[0] = lap[n - 1] = 0.0;
    }

    // advance (u_prev, u) -> (u, u_next); returns max |u_next|
    double advance(std::vector<double>& u_prev, std::vector<double>& u, double t) {
        laplacian(u);
        const double tau = cfg.tau;
        const double tau2 = tau * tau;
        const std::size_t n = u.size();
        const bool backward = cfg.damping == SimConfig::Damping::Backward;
        const double denom = backward ? 1.0 + tau : 1.0 + 0.5 * tau;
        double amax = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double rhs = lap[i];
            if (cfg.nonlin.kind != NonlinKind::Zero)
                rhs += cfg.nonlin.f(u[i]);
            if (cfg.forcing)
                rhs += cfg.forcing(grid.x[i], t);
            double numer = tau2 * rhs + 2.0 * u[i] - u_prev[i];
            numer += backward ? tau * u[i] : 0.5 * tau * u_prev[i];
            const double next = numer / denom;
            u_prev[i] = next; // reuse storage, swap below
            amax = std::max(amax, std::abs(next));
        }
        u_prev[0] = u_prev[n - 1] = 0.0;
        std::swap(u_prev, u);
        return amax;
    }
};

} // namespace

void step(FieldState& state, const SimConfig& cfg, const Grid& grid) {
    Stepper st(cfg, grid);
    const double amax = st.advance(state.u_prev, state.u, state.t);
    state.t += state.tau;
    if (!std::isfinite(amax) || amax > cfg.blowup_threshold)
        throw BlowupDetected(state.t);
}

std::pair<std::vector<double>, std::vector<double>>
make_initial_data(const SimConfig& cfg, const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<double> u0(n, 0.0), u1(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        u0[i] = profile_value(cfg, grid.x[i]);
        u1[i] = cfg.data.u1_scale * u0[i];
    }
    return {u0, u1};
}

double tail_norm_estimate(const SimConfig& cfg) {
    if (cfg.data.profile != InitialData::Profile::PowerTail)
        return 0.0;
    // int_{r_cut}^inf eps^2 <r>^{-2 mu} <r>^{2 lambda} omega r^{N-1} dr by
    // midpoint sum on a stretched grid
    const double mu = cfg.data.mu;
    const double lam = cfg.weight.lambda;
    const int dim = cfg.domain.dim;
    const double omega = cfg.domain.geometry == Geometry::RadialExterior
                             ? unit_sphere_area(dim)
                             : 2.0;
    double sum = 0.0;
    double r = cfg.data.r_cut;
    double dr = 0.05 * cfg.data.r_cut;
    for (int k = 0; k < 4000; ++k) {
        const double rm = r + 0.5 * dr;
        const double integrand = std::pow(1.0 + rm * rm, lam - mu) * std::pow(rm, dim - 1);
        const double piece = omega * integrand * dr;
        sum += piece;
        if (piece < 1e-16 * sum && k > 10)
            break;
        r += dr;
        dr *= 1.05;
    }
    return cfg.data.epsilon * cfg.data.epsilon * sum;
}

LifespanRecord integrate(const SimConfig& cfg, const Grid& grid,
                         const std::vector<double>& u0, const std::vector<double>& u1,
                         const ReportCallback& on_report) {
    cfg.validate();
    const double tau = cfg.tau;
    const std::size_t n = grid.size();

    Stepper st(cfg, grid);

    // ghost layer u^{-1} = u0 - tau u1 + tau^2/2 u_tt(0), second-order start
    std::vector<double> prev(n, 0.0), cur = u0;
    st.laplacian(u0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double a0 = st.lap[i] - u1[i];
        if (cfg.nonlin.kind != NonlinKind::Zero)
            a0 += cfg.nonlin.f(u0[i]);
        if (cfg.forcing)
            a0 += cfg.forcing(grid.x[i], 0.0);
        prev[i] = u0[i] - tau * u1[i] + 0.5 * tau * tau * a0;
    }

    LifespanRecord rec;
    rec.epsilon = cfg.data.epsilon;
    rec.h = grid.h;
    rec.tau = tau;

    const auto n_steps = static_cast<long>(std::ceil(cfg.t_max / tau - 1e-9));
    FieldState view;
    view.tau = tau;

    for (long k = 0; k < n_steps; ++k) {
        const double t = double(k) * tau;
        std::vector<double> before_prev;
        const bool report_now = on_report && (k % cfg.output_stride == 0);
        if (report_now)
            before_prev = prev; // u^{k-1} before the buffers rotate

        const double amax = st.advance(prev, cur, t);
        if (!std::isfinite(amax) || amax > cfg.blowup_threshold) {
            rec.t_blowup = t + tau;
            return rec;
        }
        if (report_now) {
            view.t = t;
            view.u = prev;          // layer k (after swap, prev holds u^k)
            view.u_prev = before_prev;
            view.u_next = cur;      // layer k+1
            on_report(view);
        }
    }
    return rec;
}

LifespanRecord run_lifespan(const SimConfig& cfg, bool refine) {
    Grid grid = Grid::make(cfg.domain);
    auto [u0, u1] = make_initial_data(cfg, grid);
    LifespanRecord rec = integrate(cfg, grid, u0, u1, nullptr);
    if (refine && !rec.survived()) {
        SimConfig fine = cfg;
        fine.domain.h *= 0.5;
        fine.tau *= 0.5;
        fine.output_stride *= 2;
        Grid fgrid = Grid::make(fine.domain);
        auto [v0, v1] = make_initial_data(fine, fgrid);
        LifespanRecord frec = integrate(fine, fgrid, v0, v1, nullptr);
        if (!frec.survived())
            rec.refined_agreement =
                std::abs(rec.t_blowup - frec.t_blowup) / frec.t_blowup;
    }
    return rec;
}

SimConfig make_mms_config(int dim, double h) {
    SimConfig cfg;
    cfg.domain.dim = dim;
    cfg.domain.geometry = dim == 1 ? Geometry::FullLine : Geometry::RadialExterior;
    cfg.domain.r_in = 1.0;
    cfg.domain.r_outer = dim == 1 ? 6.0 : 7.0;
    cfg.domain.h = h;
    cfg.tau = 0.4 * h;
    cfg.t_max = 2.0;
    cfg.weight = weights::WeightParams::make(dim, 0.0);
    cfg.data.profile = InitialData::Profile::Zero;
    cfg.nonlin = NonlinearitySpec::make(NonlinKind::OddPower, 3.0);
    return cfg;
}

namespace {

struct MmsExact {
    int dim;
    double center, width;

    double bump(double s) const { return mollifier(s); }

    double value(double x, double t) const {
        return std::exp(-t) * mollifier((x - center) / width);
    }
    // spatial Laplacian of the bump factor at x
    double lap_bump(double x) const {
        const double s = (x - center) / width;
        const double q = 1.0 - s * s;
        if (q <= 0.0)
            return 0.0;
        const double b = mollifier(s);
        const double dbds = b * (-2.0 * s / (q * q));
        const double d2bds2 =
            b * ((4.0 * s * s / (q * q * q * q)) - (2.0 * q * q + 8.0 * s * s * q) / (q * q * q * q));
        double lap = d2bds2 / (width * width);
        if (dim > 1)
            lap += (dim - 1) / x * dbds / width;
        return lap;
    }
};

} // namespace

double mms_max_error(const SimConfig& cfg_in, double t_end) {
    SimConfig cfg = cfg_in;
    MmsExact ex;
    ex.dim = cfg.domain.dim;
    if (cfg.domain.geometry == Geometry::FullLine) {
        ex.center = 0.0;
        ex.width = 2.0;
    } else {
        ex.center = 0.5 * (cfg.domain.r_in + cfg.domain.r_outer);
        ex.width = 0.35 * (cfg.domain.r_outer - cfg.domain.r_in);
    }
    // forcing g = u_tt - Lap u + u_t - f(u) evaluated on u_ex
    cfg.forcing = [ex, nl = cfg.nonlin](double x, double t) {
        const double u = ex.value(x, t);
        const double lap = std::exp(-t) * ex.lap_bump(x);
        // u_tt = u, u_t = -u for e^{-t} profiles
        return u - lap - u - nl.f(u);
    };
    cfg.t_max = t_end;

    Grid grid = Grid::make(cfg.domain);
    const std::size_t n = grid.size();
    std::vector<double> u0(n, 0.0), u1(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        u0[i] = ex.value(grid.x[i], 0.0);
        u1[i] = -u0[i];
    }

    // integrate exactly floor(t_end/tau) steps, then compare
    const auto n_steps = static_cast<long>(std::round(t_end / cfg.tau));
    cfg.tau = t_end / double(n_steps); // land exactly on t_end
    cfg.validate();

    Stepper st(cfg, grid);
    std::vector<double> prev(n, 0.0), cur = u0;
    st.laplacian(u0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double a0 = st.lap[i] + cfg.nonlin.f(u0[i]) + cfg.forcing(grid.x[i], 0.0) - u1[i];
        prev[i] = u0[i] - cfg.tau * u1[i] + 0.5 * cfg.tau * cfg.tau * a0;
    }
    for (long k = 0; k < n_steps; ++k) {
        const double amax = st.advance(prev, cur, double(k) * cfg.tau);
        if (!std::isfinite(amax))
            throw NonConvergence("mms run diverged");
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, std::abs(cur[i] - ex.value(grid.x[i], t_end)));
    return err;
}

double convergence_order(const SimConfig& base, int levels) {
    if (levels < 3)
        throw InvalidParameter("convergence_order: need levels >= 3");
    std::vector<double> errs;
    SimConfig cfg = base;
    for (int l = 0; l < levels; ++l) {
        errs.push_back(mms_max_error(cfg, base.t_max));
        cfg.domain.h *= 0.5;
        cfg.tau *= 0.5;
    }
    // least-squares slope of log(err) on log(h); equivalently average of
    // pairwise log2 ratios weighted uniformly
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
        sum += std::log2(errs[i] / errs[i + 1]);
    return sum / double(errs.size() - 1);
}

} // namespace dampwave
