#ifndef DAMPWAVE_WEIGHTS_HPP
#define DAMPWAVE_WEIGHTS_HPP

// The self-similar heat-flow weight family Phi_beta, the parabolic abscissa
// Psi, analytic derivatives, the one-dimensional modified weight, and the
// empirical certification of the two-sided Phi_beta ~ Psi^{-beta} bounds.

#include <cstdint>
#include <vector>

namespace dampwave::weights {

struct WeightParams {
    int dim = 2;
    double lambda = 0.0;
    double t0 = 1.0;
    double delta = 0.0; // (N - 2 lambda) / (4 N)
    double beta = 0.0;  // 2 lambda N / (N + 2 lambda), equals lambda/(1-2 delta)

    // Fills delta/beta from (dim, lambda, t0) and validates the ranges
    // 0 <= lambda < dim/2 and t0 >= 1.
    static WeightParams make(int dim, double lambda, double t0 = 1.0);
};

struct WeightBounds {
    double beta = 0.0;
    double c_hat = 0.0; // empirical lower constant for Phi_beta Psi^beta
    double C_hat = 0.0; // empirical upper constant
    long sample_count = 0;
    double max_abscissa = 0.0; // largest Psi visited
};

// Psi(x,t:t0) = t0 + t + |x|^2/4; depends on x only through r = |x|.
double psi(double r, double t, const WeightParams& params);

// Phi_beta(x,t:t0) = (t0+t)^{-beta} e^{-z} M(N/2-beta, N/2; z),
// z = |x|^2 / (4(t0+t)). Strictly positive for 0 <= beta < N/2.
double phi_beta(double r, double t, double beta, const WeightParams& params);

struct PhiDerivatives {
    double value;     // Phi_beta
    double dt;        // time derivative, via the identity -beta Phi_{beta+1}
    double laplacian; // space Laplacian, via the radial chain rule (independent route)
    double dr;        // radial derivative, so grad = dr * x/r
};

PhiDerivatives phi_beta_derivatives(double r, double t, double beta, const WeightParams& params);

// Chain-rule route for the time derivative; used to cross-check the
// -beta Phi_{beta+1} identity.
double phi_beta_dt_chain(double r, double t, double beta, const WeightParams& params);

// One-dimensional modified weight (2 - 1/(t0+t)) Phi_beta. Requires dim == 1.
double phi_tilde_1d(double r, double t, const WeightParams& params);

// Margins of the modified-weight differential inequality at one point,
// computed from analytic derivatives. `as_printed` uses the gain term
// Phi~/(1+t)^2; `corrected` uses Phi~/(2 (t0+t)^2), which is the form the
// exact identity d/dt Phi~ - Lap Phi~ = Phi_beta/(t0+t)^2 supports.
struct TildeMargins {
    double as_printed;
    double corrected;
    double identity_residual; // dPhi~/dt - Lap Phi~ - Phi_beta/(t0+t)^2
};
TildeMargins phi_tilde_inequality_margins(double r, double t, const WeightParams& params);

struct CertifyOptions {
    int n_t = 64;       // log-spaced times in [0, max_t]
    int n_x = 128;      // log-spaced radii in [0, max_x]
    double max_t = 1e4;
    double max_x = 2e4; // pushes Psi across 8 decades
    long random_samples = 0;
    std::uint64_t seed = 0;
};

// Samples Phi_beta Psi^beta over a wide (r, t, t0 in {1,10}) range and
// returns empirical min/max. Throws BoundViolation if a nonpositive ratio
// shows up while beta < N/2.
WeightBounds certify_bounds(double beta, const WeightParams& params,
                            const CertifyOptions& opts = {});

} // namespace dampwave::weights

#endif
