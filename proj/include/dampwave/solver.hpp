#ifndef DAMPWAVE_SOLVER_HPP
#define DAMPWAVE_SOLVER_HPP

// Explicit finite-difference integration of the damped wave equation
//   u_tt - Lap u + u_t = f(u) + forcing
// on the full line or a radial exterior domain, homogeneous Dirichlet at
// both grid ends. The damping term is centered, which keeps the explicit
// update second order in time.

#include "dampwave/grid.hpp"
#include "dampwave/weights.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace dampwave {

enum class NonlinKind { OddPower, AbsolutePower, Zero };

struct NonlinearitySpec {
    NonlinKind kind = NonlinKind::Zero;
    double p = 2.0;
    double c_f = 2.0; // Lipschitz-structure constant, defaults to p

    static NonlinearitySpec make(NonlinKind kind, double p);

    double f(double u) const;
    double F(double u) const; // antiderivative of f with F(0) = 0
};

struct InitialData {
    enum class Profile { Zero, Bump, PowerTail };
    Profile profile = Profile::Bump;
    double epsilon = 1.0;
    double mu = 2.0;       // tail decay exponent for PowerTail
    double r_cut = 5.0;    // support radius (tail truncated here)
    double u1_scale = 0.0; // u1 = u1_scale * (u0 profile)
};

struct SimConfig {
    DomainSpec domain;
    NonlinearitySpec nonlin;
    weights::WeightParams weight = weights::WeightParams::make(1, 0.0);
    InitialData data;
    double tau = 0.025;
    double t_max = 100.0;
    double blowup_threshold = 1e6;
    int output_stride = 20;
    enum class Damping { Centered, Backward } damping = Damping::Centered;
    bool tilde_weight = false; // use the 1-D modified weight in E~
    std::function<double(double x, double t)> forcing; // manufactured runs only

    void validate() const; // throws ConfigInvalid with the offending rule
};

struct FieldState {
    double t = 0.0;
    double tau = 0.0;
    std::vector<double> u;      // layer at t
    std::vector<double> u_prev; // layer at t - tau
    std::vector<double> u_next; // layer at t + tau when available (reports)
};

struct LifespanRecord {
    double epsilon = 0.0;
    double t_blowup = std::numeric_limits<double>::infinity();
    double h = 0.0;
    double tau = 0.0;
    double refined_agreement = std::numeric_limits<double>::quiet_NaN();

    bool survived() const { return !std::isfinite(t_blowup); }
};

// One explicit step; advances state in place by tau. Throws BlowupDetected
// when the new layer exceeds the sup-norm cap or turns non-finite.
void step(FieldState& state, const SimConfig& cfg, const Grid& grid);

// Samples the configured initial profile; returns (u0, u1).
std::pair<std::vector<double>, std::vector<double>>
make_initial_data(const SimConfig& cfg, const Grid& grid);

// Weighted norm of the discarded tail of a PowerTail profile beyond r_cut,
// int_{r>r_cut} u0^2 <x>^{2 lambda} dx, so smallness bookkeeping stays honest.
double tail_norm_estimate(const SimConfig& cfg);

// Core loop: integrates from the given layers to t_max or blowup. The
// callback (if any) fires every output_stride steps with (u_prev, u, u_next)
// wrapped in a FieldState, starting at t = 0.
using ReportCallback = std::function<void(const FieldState&)>;
LifespanRecord integrate(const SimConfig& cfg, const Grid& grid,
                         const std::vector<double>& u0, const std::vector<double>& u1,
                         const ReportCallback& on_report);

// integrate() with profile data; re-runs once at (h/2, tau/2) after a blowup
// to fill refined_agreement when refine is set.
LifespanRecord run_lifespan(const SimConfig& cfg, bool refine);

// Manufactured-solution verification: max-norm error at t_end against
// u_ex = e^{-t} bump(x), with the matching forcing appended.
double mms_max_error(const SimConfig& cfg, double t_end);

// Builds a small manufactured-solution config for the given dimension.
SimConfig make_mms_config(int dim, double h);

// Observed convergence order from `levels` successive mesh halvings of the
// manufactured problem. Expected near 2 for the centered scheme.
double convergence_order(const SimConfig& base, int levels);

} // namespace dampwave

#endif
