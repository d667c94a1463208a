#include "dampwave/inequalities.hpp"
#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dampwave::inequalities {

namespace {

double smoothstep(double s) {
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

std::vector<double> gradient_fd(const std::vector<double>& u, const Grid& grid) {
    const std::size_t n = u.size();
    std::vector<double> g(n, 0.0);
    const double inv2h = 0.5 / grid.h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        g[i] = (u[i + 1] - u[i - 1]) * inv2h;
    return g;
}

} // namespace

double TestFunction::operator()(double x) const {
    const double cut = smoothstep((x - cut_lo) / ramp) * smoothstep((cut_hi - x) / ramp);
    if (cut == 0.0)
        return 0.0;
    double s = 0.0;
    for (const auto& b : bumps) {
        const double d = (x - b.center) / b.width;
        s += b.amp * std::exp(-0.5 * d * d);
    }
    return cut * s;
}

std::vector<double> TestFunction::sample(const Grid& grid, double dilation) const {
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        w[i] = (*this)(dilation * grid.x[i]);
    return w;
}

TestFunction make_test_function(const TestFunctionSpec& spec, const Grid& grid) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    TestFunction f;
    const double lo = grid.x.front();
    f.cut_lo = grid.geometry == Geometry::RadialExterior ? lo + spec.inner_margin : lo;
    f.cut_hi = std::min(grid.x.back(), lo + spec.r_support);
    f.ramp = 0.1 * (f.cut_hi - f.cut_lo);

    const int n_bumps = 1 + int(uni(rng) * spec.max_bumps) % spec.max_bumps;
    const double span = f.cut_hi - f.cut_lo;
    for (int k = 0; k < n_bumps; ++k) {
        TestFunction::Bump b;
        b.amp = (uni(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 0.8 * uni(rng));
        b.center = f.cut_lo + (0.15 + 0.7 * uni(rng)) * span;
        const double wmin = 4.0 * grid.h;
        const double wmax = 0.25 * spec.r_support;
        b.width = wmin * std::pow(wmax / wmin, uni(rng));
        f.bumps.push_back(b);
    }
    return f;
}

double k_lambda(int dim, double lambda) {
    if (lambda <= -0.5 * (dim - 2))
        throw InvalidParameter("k_lambda: requires lambda > -(N-2)/2");
    return std::min(0.5 * dim + lambda - 1.0, 0.5 * dim);
}

CheckResult hardy_check(const std::vector<double>& w, const Grid& grid,
                        double lambda, double t, const weights::WeightParams& params) {
    CheckResult out;
    if (lambda <= 1.0 - 0.5 * grid.dim + 1e-15) {
        out.skipped = true; // K(lambda) <= 0, the inequality carries no content
        return out;
    }
    const double K = k_lambda(grid.dim, lambda);
    const auto g = gradient_fd(w, grid);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double rad = grid.radius(i);
        const double psi = params.t0 + t + 0.25 * rad * rad;
        lhs += grid.qw[i] * w[i] * w[i] * std::pow(psi, lambda - 1.0);
        rhs += grid.qw[i] * g[i] * g[i] * std::pow(psi, lambda);
    }
    if (rhs < 1e-28) {
        out.skipped = true;
        return out;
    }
    // the integration-by-parts proof of the inequality yields the constant
    // K^2/4; the displayed 4 K^2 variant fails on near-extremal samples and
    // is reported alongside for reference
    out.ratio = 0.25 * K * K * lhs / rhs;
    out.ratio_printed = 4.0 * K * K * lhs / rhs;
    return out;
}

double gn_quotient(const std::vector<double>& w, const Grid& grid, double p) {
    const double sigma = grid.dim * (p - 1.0) / (2.0 * (p + 1.0));
    const auto g = gradient_fd(w, grid);
    double np1 = 0.0, n2 = 0.0, ng = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        np1 += grid.qw[i] * std::pow(std::abs(w[i]), p + 1.0);
        n2 += grid.qw[i] * w[i] * w[i];
        ng += grid.qw[i] * g[i] * g[i];
    }
    if (n2 < 1e-28 || ng < 1e-28)
        return 0.0;
    return std::pow(np1, 1.0 / (p + 1.0)) /
           (std::pow(n2, 0.5 * (1.0 - sigma)) * std::pow(ng, 0.5 * sigma));
}

ConstantEstimate estimate_gn_constant(const Grid& grid, double p, long trials,
                                      std::uint64_t seed, const TestFunctionSpec& spec_base) {
    ConstantEstimate est;
    est.name = "C_GN";
    est.trials = trials;
    est.seed = seed;
    for (long k = 0; k < trials; ++k) {
        TestFunctionSpec spec = spec_base;
        spec.seed = seed + std::uint64_t(k);
        const auto fn = make_test_function(spec, grid);
        est.value = std::max(est.value, gn_quotient(fn.sample(grid), grid, p));
    }
    return est;
}

double weighted_gn_constant(double c_gn, int dim, double p, double lambda) {
    const double sigma = dim * (p - 1.0) / (2.0 * (p + 1.0));
    // gradient-of-product bound plus the proof-backed Hardy constant,
    // applied at exponent 2 lambda/(p+1)
    const double K = k_lambda(dim, 2.0 * lambda / (p + 1.0));
    return c_gn * std::pow(1.0 + 2.0 * lambda / ((p + 1.0) * K), sigma);
}

WeightedGnResult weighted_gn_check(const std::vector<double>& v, const Grid& grid,
                                   double p, double lambda, double t,
                                   const weights::WeightParams& params, double c_gn) {
    WeightedGnResult out;
    const double sigma = grid.dim * (p - 1.0) / (2.0 * (p + 1.0));
    const auto g = gradient_fd(v, grid);

    double lhs = 0.0, n2 = 0.0, ng = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double rad = grid.radius(i);
        const double psi = params.t0 + t + 0.25 * rad * rad;
        lhs += grid.qw[i] * std::pow(std::abs(v[i]), p + 1.0) * std::pow(psi, lambda);
        n2 += grid.qw[i] * v[i] * v[i] * std::pow(psi, lambda);
        ng += grid.qw[i] * g[i] * g[i] * std::pow(psi, lambda);
    }
    if (n2 < 1e-28 || ng < 1e-28) {
        out.skipped = true;
        return out;
    }
    const double ctilde = weighted_gn_constant(c_gn, grid.dim, p, lambda);
    const double norms = std::pow(n2, 0.5 * (1.0 - sigma)) * std::pow(ng, 0.5 * sigma);
    const double lhs_norm = std::pow(lhs, 1.0 / (p + 1.0));
    out.raw_ratio = lhs_norm / (ctilde * norms);
    const double tfac = std::pow(params.t0 + t, -lambda * (p - 1.0) / (2.0 * (p + 1.0)));
    out.ratio = lhs_norm / (ctilde * tfac * norms);
    return out;
}

IbpResult ibp_check(const std::vector<double>& u, const Grid& grid, double beta,
                    double delta, double t, const weights::WeightParams& params) {
    if (delta <= 0.0 || delta >= 0.5)
        throw InvalidParameter("ibp_check: delta must lie in (0, 1/2)");
    IbpResult out;
    const std::size_t n = u.size();
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    const double half_inv_h = 0.5 / grid.h;

    const auto g = gradient_fd(u, grid);
    double lhs = 0.0, rhs_grad = 0.0, rhs_lap = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double lap_u = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
        if (grid.geometry == Geometry::RadialExterior)
            lap_u += (grid.dim - 1) / grid.x[i] * (u[i + 1] - u[i - 1]) * half_inv_h;
        const double rad = grid.radius(i);
        const auto phi = weights::phi_beta_derivatives(rad, t, beta, params);
        const double w_m1 = std::pow(phi.value, -1.0 + 2.0 * delta);
        const double w_m2 = std::pow(phi.value, -2.0 + 2.0 * delta);
        lhs += grid.qw[i] * u[i] * lap_u * w_m1;
        rhs_grad += grid.qw[i] * g[i] * g[i] * w_m1;
        rhs_lap += grid.qw[i] * u[i] * u[i] * phi.laplacian * w_m2;
    }
    out.lhs = lhs;
    out.rhs = -delta / (1.0 - delta) * rhs_grad + 0.5 * (1.0 - 2.0 * delta) * rhs_lap;
    const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-12});
    out.margin = (out.rhs - out.lhs) / scale;
    out.skipped = scale <= 1e-12;
    return out;
}

} // namespace dampwave::inequalities
