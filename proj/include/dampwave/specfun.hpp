#ifndef DAMPWAVE_SPECFUN_HPP
#define DAMPWAVE_SPECFUN_HPP

// Kummer's confluent hypergeometric function M(a,c;z), its z-derivative and
// the Pochhammer symbol. Only real parameters and real arguments are
// supported; this is all the weight family needs.

namespace dampwave::specfun {

struct KummerArgs {
    double a;
    double c;
    double z;
};

// Rising factorial d(d+1)...(d+n-1), with (d)_0 = 1.
double pochhammer(double d, unsigned n);

// M(a,c;z). Series evaluation for moderate |z|, Kummer transformation for
// moderately negative z, large-|z| asymptotic expansion beyond that.
// Throws InvalidParameter if c is zero or a negative integer, NonConvergence
// if no branch reaches tolerance within the term budget.
double kummer_m(const KummerArgs& args);
double kummer_m(double a, double c, double z);

// e^{-z} M(a,c;z), stable for large positive z where M itself overflows.
double kummer_m_scaled(double a, double c, double z);

// dM/dz = (a/c) M(a+1,c+1;z).
double kummer_m_derivative(const KummerArgs& args);
double kummer_m_derivative(double a, double c, double z);

// Branch-switch point between the Taylor series and the asymptotic
// expansion, and the series term budget.
inline constexpr double kSeriesSwitch = 60.0;
inline constexpr int kTermBudget = 500;

} // namespace dampwave::specfun

#endif
