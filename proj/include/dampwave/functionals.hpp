#ifndef DAMPWAVE_FUNCTIONALS_HPP
#define DAMPWAVE_FUNCTIONALS_HPP

// Quadrature of the weighted energy functionals and the runtime monitors
// for the differential inequalities they satisfy.

#include "dampwave/solver.hpp"
#include "dampwave/weights.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dampwave {

struct TheoremWeights {
    double grad = 0.0;      // int |grad u|^2 (1+t+|x|^2)^lambda
    double dt = 0.0;        // int |u_t|^2 (1+t+|x|^2)^lambda
    double mass = 0.0;      // int u^2 (1+t+|x|^2)^lambda
    double grad_hist = 0.0; // int_0^t int |grad u|^2 (1+s+|x|^2)^lambda
    double dt_hist = 0.0;   // int_0^t (1+s) int |u_t|^2 (1+s+|x|^2)^lambda

    double energy() const { return grad + dt; }
};

struct EnergyReport {
    double t = 0.0;
    double e_lambda = 0.0; // (t0+t) int (|grad u|^2 + |u_t|^2) Psi^lambda
    double e_tilde = 0.0;  // int (2 u u_t + u^2) Phi^{-1+2delta}
    double m_lambda = 0.0; // e_lambda + int u^2 Psi^lambda
    double y_lambda = 0.0; // int_0^t int |grad u|^2 Psi^lambda
    double z_lambda = 0.0; // int_0^t (t0+s) int |u_t|^2 Psi^lambda
    double f_term = 0.0;   // int F(u) Psi^lambda
    double uf_term = 0.0;  // int u f(u) Psi^lambda
    double f_abs = 0.0;    // int |F(u)| Psi^lambda
    double uf_abs = 0.0;   // int |u f(u)| Psi^lambda
    double l2 = 0.0;       // int u^2
    double h1 = 0.0;       // int (|grad u|^2 + u^2)
    double energy = 0.0;   // int (|grad u|^2 + |u_t|^2)
    double grad_psi = 0.0; // int |grad u|^2 Psi^lambda
    double ut_psi = 0.0;   // int |u_t|^2 Psi^lambda
    double fg_hist = 0.0;  // int_0^t int (|F| + |u f|) Psi^lambda
    double sup_u = 0.0;
    TheoremWeights theorem_weights;
};

// All fields by trapezoidal quadrature on the grid (surface measure in
// radial geometry); the running time integrals continue from `prev`.
// Throws QuadratureOverflow on non-finite integrands.
EnergyReport compute_report(const FieldState& state, const SimConfig& cfg,
                            const Grid& grid, const EnergyReport* prev);

// Field access by NDJSON name ("e_lambda", "l2", "tw_energy", ...).
double report_field(const EnergyReport& r, std::string_view name);
const std::vector<std::string>& report_field_names();

struct RunResult {
    std::vector<EnergyReport> series;
    LifespanRecord record;
};

struct RunOptions {
    bool refine_on_blowup = true;
    bool collect_reports = true;
};

// Integrates the configured problem, emitting a report every output_stride
// steps. On blowup, optionally re-runs once at halved resolution to fill
// refined_agreement.
RunResult run(const SimConfig& cfg, const RunOptions& opts = {});

struct MonitorVerdict {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double worst_margin = 0.0; // min over time of (RHS - LHS)/scale
    double worst_time = 0.0;
    double gamma_hat = 0.0; // equivalence ratio extrema
    double Gamma_hat = 0.0;
    std::string detail;
};

// d/dt E_lambda differential inequality, centered differences over reports.
MonitorVerdict check_lemma32(const std::vector<EnergyReport>& series, const SimConfig& cfg);

// d/dt E~ inequality assembled from certified weight-bound constants:
// wb_beta for Phi_beta, wb_beta1 for Phi_{beta+1} (upper constant only).
MonitorVerdict check_lemma33(const std::vector<EnergyReport>& series, const SimConfig& cfg,
                             const weights::WeightBounds& wb_beta,
                             const weights::WeightBounds& wb_beta1);

// Two-sided boundedness of (E + nu E~)/m. Requires t0 >= c_hat^{-1+2delta} nu.
MonitorVerdict check_equivalence(const std::vector<EnergyReport>& series, const SimConfig& cfg,
                                 double nu, const weights::WeightBounds& wb_beta);

// The nu used by the weighted-energy argument.
double equivalence_nu(const SimConfig& cfg, const weights::WeightBounds& wb_beta);

struct WeeResult {
    double eta_hat = 0.0;
    MonitorVerdict verdict;
};

// Weighted-energy estimate: eta_hat = inf_t RHS(t)/(m+Y+Z)(t); passes when
// positive and stable over the last quarter of the series.
WeeResult check_wee(const std::vector<EnergyReport>& series, const SimConfig& cfg);

// Critical-exponent interpolation chain at p = 1 + 4/(N+2 lambda), with the
// constant assembled from the empirical GN constant at q = 1 + 4/N.
MonitorVerdict check_critical_interpolation(const FieldState& state, const SimConfig& cfg,
                                            const Grid& grid, double c_gn_q);

} // namespace dampwave

#endif
