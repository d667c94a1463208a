#ifndef DAMPWAVE_EXPERIMENTS_HPP
#define DAMPWAVE_EXPERIMENTS_HPP

// Orchestrated reproductions: decay-rate fits, the critical-exponent
// dichotomy scan, the subcritical lifespan sweep, the polynomially-decaying
// data preset, and the one-dimensional theorem run.

#include "dampwave/functionals.hpp"

#include <string>
#include <vector>

namespace dampwave::experiments {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int n_points = 0;
};

// Least-squares slope of log(quantity) against log(1+t) over the window.
// Throws InsufficientData for fewer than 10 usable points or nonpositive
// values inside the window.
FitResult fit_decay(const std::vector<EnergyReport>& series, const std::string& quantity,
                    double window_lo, double window_hi);

// Shared log-log fit on raw (t, value) pairs; 1+t abscissa.
FitResult fit_loglog(const std::vector<double>& ts, const std::vector<double>& vs,
                     double window_lo, double window_hi);

// p_c = 1 + 4/(N + 2 lambda).
double critical_exponent(int dim, double lambda);

// Theoretical lifespan slope -1 / (1/(p-1) - (N+2 lambda)/4); requires the
// subcritical range p < p_c.
double lifespan_exponent(int dim, double lambda, double p);

struct LifespanSweepResult {
    std::vector<LifespanRecord> records;
    FitResult fit; // log t_blowup vs log epsilon
    double theoretical_slope = 0.0;
};

// Runs each epsilon (with halved-resolution confirmation) and fits the
// blowup times. Throws SweepInconclusive with fewer than 4 finite times.
LifespanSweepResult lifespan_sweep(const SimConfig& base, const std::vector<double>& epsilons);

struct DichotomyScan {
    int dim = 0;
    double lambda = 0.0;
    double p_c = 0.0;
    double epsilon = 0.0;
    std::vector<double> p_values;
    std::vector<bool> blew_up; // per p
};

// For each p, runs small-amplitude positive data to the horizon and records
// the verdict. Cells are reported as observed, including ambiguous ones.
// lambda enters the critical exponent only; the report weight is clamped
// into [0, N/2) so the functional machinery stays in range.
DichotomyScan dichotomy_scan(int dim, double lambda, const std::vector<double>& p_list,
                             double epsilon, const SimConfig* base = nullptr);

// Default run configuration used by the scan for the given dimension.
SimConfig dichotomy_base(int dim, double lambda, double t_max = 200.0);

// Bisects the amplitude down from 1 until the run survives to the horizon,
// then halves once more.
double find_small_epsilon(const SimConfig& base, int max_iters = 12);

// Global-existence preset for polynomially decaying data: picks lambda in
// the admissible interval for the given p and measures data in the <x>^N
// weight. Requires 1 + 2/N < p (and p <= N/(N-2) for N >= 3).
SimConfig corollary_preset(int dim, double p);

struct Theorem41Report {
    double lambda = 0.0;
    double p = 0.0;
    double threshold = 0.0; // 1 + 4/(1+2 lambda)
    FitResult energy_fit;   // unweighted energy, slope vs -lambda-1
    FitResult mass_fit;     // unweighted L2 mass, slope vs -lambda
    bool passed = false;
};

// One-dimensional run with the modified weight; fits the two decay
// quantities. Rejects p at or below the strict threshold.
Theorem41Report theorem41_check(double lambda, double p);

// The configuration theorem41_check runs (exposed for tests and the CLI).
SimConfig theorem41_config(double lambda, double p);

} // namespace dampwave::experiments

#endif
