#include "dampwave/weights.hpp"
#include "dampwave/specfun.hpp"
#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace dampwave::weights {

using specfun::kummer_m_scaled;

WeightParams WeightParams::make(int dim, double lambda, double t0) {
    if (dim < 1)
        throw InvalidParameter("WeightParams: dim must be >= 1");
    if (lambda < 0.0 || lambda >= 0.5 * dim)
        throw InvalidParameter("WeightParams: lambda must lie in [0, dim/2)");
    if (t0 < 1.0)
        throw InvalidParameter("WeightParams: t0 must be >= 1");
    WeightParams p;
    p.dim = dim;
    p.lambda = lambda;
    p.t0 = t0;
    p.delta = (dim - 2.0 * lambda) / (4.0 * dim);
    p.beta = 2.0 * lambda * dim / (dim + 2.0 * lambda);
    return p;
}

double psi(double r, double t, const WeightParams& params) {
    return params.t0 + t + 0.25 * r * r;
}

namespace {

// Phi_beta = (t0+t)^{-beta} G(z) with G(z) = e^{-z} M(N/2-beta, N/2; z).
struct ScaledKummer {
    double g, g1, g2; // G, G', G''
};

ScaledKummer scaled_kummer(double z, double beta, int dim, bool with_derivs) {
    const double c = 0.5 * dim;
    const double a = c - beta;
    ScaledKummer out{};
    const double m0 = kummer_m_scaled(a, c, z);
    out.g = m0;
    if (with_derivs) {
        const double m1 = a / c * kummer_m_scaled(a + 1.0, c + 1.0, z);
        const double m2 =
            a / c * (a + 1.0) / (c + 1.0) * kummer_m_scaled(a + 2.0, c + 2.0, z);
        out.g1 = m1 - m0;
        out.g2 = m2 - 2.0 * m1 + m0;
    }
    return out;
}

} // namespace

double phi_beta(double r, double t, double beta, const WeightParams& params) {
    if (t < 0.0)
        throw InvalidParameter("phi_beta: t must be >= 0");
    if (beta < 0.0)
        throw InvalidParameter("phi_beta: beta must be >= 0");
    const double s = params.t0 + t;
    const double z = 0.25 * r * r / s;
    return std::pow(s, -beta) * scaled_kummer(z, beta, params.dim, false).g;
}

PhiDerivatives phi_beta_derivatives(double r, double t, double beta,
                                    const WeightParams& params) {
    const double s = params.t0 + t;
    const double z = 0.25 * r * r / s;
    const auto k = scaled_kummer(z, beta, params.dim, true);
    PhiDerivatives d{};
    const double pref = std::pow(s, -beta);
    d.value = pref * k.g;
    d.dt = -beta * phi_beta(r, t, beta + 1.0, params);
    d.laplacian = pref / s * (k.g2 * z + 0.5 * params.dim * k.g1);
    d.dr = pref / s * k.g1 * 0.5 * r;
    return d;
}

double phi_beta_dt_chain(double r, double t, double beta, const WeightParams& params) {
    const double s = params.t0 + t;
    const double z = 0.25 * r * r / s;
    const auto k = scaled_kummer(z, beta, params.dim, true);
    return std::pow(s, -beta) / s * (-beta * k.g - z * k.g1);
}

double phi_tilde_1d(double r, double t, const WeightParams& params) {
    if (params.dim != 1)
        throw DimensionMismatch("phi_tilde_1d: requires dim == 1");
    const double s = params.t0 + t;
    return (2.0 - 1.0 / s) * phi_beta(r, t, params.beta, params);
}

TildeMargins phi_tilde_inequality_margins(double r, double t, const WeightParams& params) {
    if (params.dim != 1)
        throw DimensionMismatch("phi_tilde_inequality_margins: requires dim == 1");
    const double s = params.t0 + t;
    const double kappa = 2.0 - 1.0 / s;
    const auto d = phi_beta_derivatives(r, t, params.beta, params);
    const double tilde = kappa * d.value;
    const double dt_tilde = d.value / (s * s) + kappa * d.dt;
    const double lap_tilde = kappa * d.laplacian;

    TildeMargins m{};
    const double lhs = dt_tilde - lap_tilde;
    m.as_printed = lhs - tilde / ((1.0 + t) * (1.0 + t));
    m.corrected = lhs - tilde / (2.0 * s * s);
    m.identity_residual = lhs - d.value / (s * s);
    return m;
}

WeightBounds certify_bounds(double beta, const WeightParams& params,
                            const CertifyOptions& opts) {
    if (beta < 0.0)
        throw InvalidParameter("certify_bounds: beta must be >= 0");
    const bool lower_applies = beta < 0.5 * params.dim;

    WeightBounds wb;
    wb.beta = beta;
    double lo = std::numeric_limits<double>::max();
    double hi = -std::numeric_limits<double>::max();

    auto visit = [&](double r, double t, double t0) {
        const double s = t0 + t;
        const double z = 0.25 * r * r / s;
        // Phi_beta Psi^beta = G(z) (1+z)^beta since Psi = (t0+t)(1+z)
        const double ratio =
            kummer_m_scaled(0.5 * params.dim - beta, 0.5 * params.dim, z) *
            std::pow(1.0 + z, beta);
        if (lower_applies && !(ratio > 0.0))
            throw BoundViolation("certify_bounds: nonpositive Phi_beta Psi^beta ratio");
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        wb.max_abscissa = std::max(wb.max_abscissa, s * (1.0 + z));
        ++wb.sample_count;
    };

    auto log_grid = [](int n, double max_v) {
        std::vector<double> g(n);
        g[0] = 0.0;
        for (int j = 1; j < n; ++j)
            g[j] = max_v * std::pow(10.0, -8.0 * (1.0 - double(j) / (n - 1)));
        return g;
    };

    const auto ts = log_grid(opts.n_t, opts.max_t);
    const auto xs = log_grid(opts.n_x, opts.max_x);
    for (double t0 : {1.0, 10.0})
        for (double t : ts)
            for (double r : xs)
                visit(r, t, t0);

    if (opts.random_samples > 0) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (long i = 0; i < opts.random_samples; ++i) {
            const double r = opts.max_x * std::pow(10.0, -8.0 * u(rng));
            const double t = opts.max_t * std::pow(10.0, -8.0 * u(rng));
            visit(r, t, u(rng) < 0.5 ? 1.0 : 10.0);
        }
    }

    wb.c_hat = lo;
    wb.C_hat = hi;
    return wb;
}

} // namespace dampwave::weights
