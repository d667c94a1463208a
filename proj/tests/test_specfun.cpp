#include <doctest.h>

#include "dampwave/errors.hpp"
#include "dampwave/specfun.hpp"

#include <cmath>
#include <random>

using namespace dampwave;
using namespace dampwave::specfun;

namespace {

// Independent brute-force oracle: extended-precision Taylor sum, no branch
// switching. Usable wherever the series converges without heavy cancellation.
long double kummer_oracle(long double a, long double c, long double z) {
    long double term = 1.0L, sum = 1.0L;
    for (int n = 0; n < 4000; ++n) {
        term *= (a + n) / (c + n) * z / (n + 1);
        sum += term;
        if (std::abs(term) <= 1e-24L * std::abs(sum) && n > 4)
            break;
    }
    return sum;
}

long double kummer_oracle_dz(long double a, long double c, long double z) {
    // term-by-term derivative of the defining series
    long double term = a / c, sum = a / c;
    for (int n = 1; n < 4000; ++n) {
        term *= (a + n) / (c + n) * z / n;
        sum += term;
        if (std::abs(term) <= 1e-24L * std::abs(sum) && n > 4)
            break;
    }
    return sum;
}

} // namespace

TEST_CASE("pochhammer basics") {
    CHECK(pochhammer(3.7, 0) == 1.0);
    CHECK(pochhammer(-12.5, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == doctest::Approx(360.0).epsilon(1e-14));
    CHECK(pochhammer(0.0, 2) == 0.0);
    // against the lgamma route for positive d
    for (double d : {0.5, 1.0, 2.25, 7.0}) {
        for (unsigned n : {1u, 5u, 20u}) {
            const double ref = std::exp(std::lgamma(d + n) - std::lgamma(d));
            CHECK(pochhammer(d, n) == doctest::Approx(ref).epsilon(1e-12));
        }
    }
    // large-n path
    CHECK(std::isfinite(pochhammer(0.5, 200)) == false); // overflows, as the math does
    CHECK(pochhammer(1e-3, 171) > 0.0);
}

TEST_CASE("kummer_m frozen examples") {
    CHECK(kummer_m(1.0, 1.0, 1.0) == doctest::Approx(2.718281828459045).epsilon(1e-14));
    CHECK(kummer_m(0.3, 0.7, 0.0) == 1.0);
    CHECK(kummer_m(-2.5, 4.0, 0.0) == 1.0);

    // brute-force oracle value, cross-checked by (sqrt(pi)/2) erf(1) / 1
    const double oracle = double(kummer_oracle(0.5L, 1.5L, -1.0L));
    CHECK(oracle == doctest::Approx(0.7468241328124270).epsilon(1e-13));
    CHECK(kummer_m(0.5, 1.5, -1.0) == doctest::Approx(oracle).epsilon(1e-12));
    const double erf_ref = 0.5 * std::sqrt(M_PI) * std::erf(1.0);
    CHECK(kummer_m(0.5, 1.5, -1.0) == doctest::Approx(erf_ref).epsilon(1e-12));

    CHECK(kummer_m(2.0, 5.0, 7.0) ==
          doctest::Approx(44.26188388551938).epsilon(1e-12));
    CHECK(kummer_m(-0.7, 1.3, 4.2) ==
          doctest::Approx(-2.596572296232967).epsilon(1e-11));
    // asymptotic branch, z far below the series window
    CHECK(kummer_m(0.25, 1.5, -2000.0) ==
          doctest::Approx(0.1462018213343883).epsilon(1e-11));
}

TEST_CASE("kummer_m scaled evaluation") {
    // e^{-z} M agrees with the plain product at moderate z
    for (double z : {0.0, 0.5, 3.0, 20.0, 45.0}) {
        const double plain = std::exp(-z) * kummer_m(0.4, 1.0, z);
        CHECK(kummer_m_scaled(0.4, 1.0, z) == doctest::Approx(plain).epsilon(1e-12));
    }
    // large-z branch against a frozen reference
    CHECK(kummer_m_scaled(0.3, 0.5, 100.0) ==
          doctest::Approx(0.2362053991272589).epsilon(1e-11));
    // stays finite where the plain product would overflow
    const double far = kummer_m_scaled(0.25, 1.0, 1e8);
    CHECK(std::isfinite(far));
    CHECK(far > 0.0);
}

TEST_CASE("kummer transformation property, 1000 seeded cases") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> par(-5.0, 5.0);
    std::uniform_real_distribution<double> arg(-20.0, 20.0);
    int checked = 0;
    while (checked < 1000) {
        const double a = par(rng);
        double c = par(rng);
        if (c <= 0.1 && std::abs(c - std::round(c)) < 0.05)
            continue; // keep c away from the poles
        const double z = arg(rng);
        const double lhs = kummer_m(a, c, z);
        const double rhs = std::exp(z) * kummer_m(c - a, c, -z);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        ++checked;
    }
}

TEST_CASE("derivative relation and finite-difference oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> par(-3.0, 3.0);
    std::uniform_real_distribution<double> arg(-8.0, 8.0);
    for (int k = 0; k < 500; ++k) {
        const double a = par(rng);
        double c = 0.3 + std::abs(par(rng));
        const double z = arg(rng);
        const double d = kummer_m_derivative(a, c, z);
        // contiguous relation
        CHECK(d == doctest::Approx(a / c * kummer_m(a + 1, c + 1, z)).epsilon(1e-12));
        // independent series-derivative oracle
        const double ref = double(kummer_oracle_dz(a, c, z));
        CHECK(std::abs(d - ref) <= 1e-10 * (1.0 + std::abs(ref)));
    }
    CHECK(kummer_m_derivative(1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kummer_m_derivative(0.7, 2.2, 0.0) == doctest::Approx(0.7 / 2.2).epsilon(1e-14));
    // centered finite difference at the frozen point
    const double h = 1e-5;
    const double fd = (kummer_m(0.5, 1.5, -1.0 + h) - kummer_m(0.5, 1.5, -1.0 - h)) / (2 * h);
    CHECK(std::abs(kummer_m_derivative(0.5, 1.5, -1.0) - fd) <= 1e-8);
}

TEST_CASE("degenerate parameters") {
    // a = 0 freezes the series at 1
    for (double z : {-30.0, -2.0, 0.0, 1.0, 40.0, 500.0})
        CHECK(kummer_m(0.0, 1.5, z) == 1.0);
    // monotone increasing on z >= 0 for positive parameters
    double prev = kummer_m(0.8, 1.7, 0.0);
    for (double z = 0.5; z <= 30.0; z += 0.5) {
        const double cur = kummer_m(0.8, 1.7, z);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(kummer_m(1.0, 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(kummer_m(1.0, -3.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(kummer_m(1.0, 2.0, std::nan("")), InvalidParameter);
}
