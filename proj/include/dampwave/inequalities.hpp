#ifndef DAMPWAVE_INEQUALITIES_HPP
#define DAMPWAVE_INEQUALITIES_HPP

// Seeded property checks of the weighted functional inequalities on random
// smooth compactly supported radial test functions, with empirical constant
// estimation for the monitors.

#include "dampwave/grid.hpp"
#include "dampwave/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dampwave::inequalities {

struct TestFunctionSpec {
    std::uint64_t seed = 1;
    int max_bumps = 5;
    double r_support = 20.0;   // outer support radius (cutoff reaches zero here)
    double inner_margin = 0.5; // zero inside [r_in, r_in + margin] (radial)
};

// Sum of random Gaussians under a smooth cutoff; evaluable analytically so
// dilation probes can resample the same function.
struct TestFunction {
    struct Bump {
        double amp, center, width;
    };
    std::vector<Bump> bumps;
    double cut_lo = 0.0; // cutoff rises above cut_lo ...
    double cut_hi = 0.0; // ... and falls to zero at cut_hi
    double ramp = 1.0;

    double operator()(double x) const;
    // samples w(dilation * x) on the grid, zero at the pinned ends
    std::vector<double> sample(const Grid& grid, double dilation = 1.0) const;
};

TestFunction make_test_function(const TestFunctionSpec& spec, const Grid& grid);

struct ConstantEstimate {
    std::string name;
    double value = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

// K(lambda) = min(N/2 + lambda - 1, N/2); requires lambda > -(N-2)/2.
double k_lambda(int dim, double lambda);

struct CheckResult {
    double ratio = 0.0;         // LHS / RHS-bound, so <= 1 means the inequality holds
    double ratio_printed = 0.0; // same quotient under the 4 K^2 normalization
    bool skipped = false;
};

// Hardy: (K(lambda)^2/4) int w^2 Psi^{lambda-1} <= int |grad w|^2 Psi^lambda
// (the constant the divergence-identity proof establishes). Returns LHS/RHS;
// skipped when w vanishes or when K(lambda) <= 0 (e.g. N = 2, lambda = 0).
CheckResult hardy_check(const std::vector<double>& w, const Grid& grid,
                        double lambda, double t, const weights::WeightParams& params);

// Scale-invariant Gagliardo-Nirenberg quotient
// rho = ||w||_{p+1} / (||w||_2^{1-sigma} ||grad w||_2^{sigma}).
double gn_quotient(const std::vector<double>& w, const Grid& grid, double p);

// Running-max estimate of the GN constant over seeded trials.
ConstantEstimate estimate_gn_constant(const Grid& grid, double p, long trials,
                                      std::uint64_t seed, const TestFunctionSpec& spec);

// Proof-chain constant for the weighted GN inequality.
double weighted_gn_constant(double c_gn, int dim, double p, double lambda);

struct WeightedGnResult {
    double ratio = 0.0;     // LHS / (C~ (t0+t)^{-...} sigma-norms); <= 1 passes
    double raw_ratio = 0.0; // LHS / (C~ sigma-norms), no time factor
    bool skipped = false;
};

WeightedGnResult weighted_gn_check(const std::vector<double>& v, const Grid& grid,
                                   double p, double lambda, double t,
                                   const weights::WeightParams& params, double c_gn);

struct IbpResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // (rhs - lhs) / scale
    bool skipped = false;
};

// Integration-by-parts inequality with weight Phi_beta^{-1+2delta}; Delta u
// by centered differences, Delta Phi analytic.
IbpResult ibp_check(const std::vector<double>& u, const Grid& grid, double beta,
                    double delta, double t, const weights::WeightParams& params);

} // namespace dampwave::inequalities

#endif
