#include "dampwave/grid.hpp"
#include "dampwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace dampwave {

double unit_sphere_area(int dim) {
    const double pi = std::numbers::pi;
    return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

void DomainSpec::validate() const {
    if (h <= 0.0)
        throw ConfigInvalid("domain: h must be positive");
    if (geometry == Geometry::FullLine) {
        if (dim != 1)
            throw ConfigInvalid("domain: full_line requires dim = 1");
        if (r_outer <= 0.0)
            throw ConfigInvalid("domain: r_outer must be positive");
    } else {
        if (dim < 2)
            throw ConfigInvalid("domain: radial_exterior requires dim >= 2");
        if (r_in <= 0.0)
            throw ConfigInvalid("domain: radial_exterior requires r_in > 0");
        if (r_outer <= r_in + 10.0 * h)
            throw ConfigInvalid("domain: r_outer must exceed r_in + 10 h");
    }
}

Grid Grid::make(const DomainSpec& spec) {
    spec.validate();
    Grid g;
    g.dim = spec.dim;
    g.geometry = spec.geometry;
    g.h = spec.h;

    double lo, hi;
    if (spec.geometry == Geometry::FullLine) {
        lo = -spec.r_outer;
        hi = spec.r_outer;
    } else {
        lo = spec.r_in;
        hi = spec.r_outer;
    }
    const auto n = static_cast<std::size_t>(std::round((hi - lo) / spec.h)) + 1;
    g.x.resize(n);
    g.qw.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.x[i] = lo + double(i) * spec.h;
    g.x.back() = hi;

    const double omega = spec.geometry == Geometry::RadialExterior ? unit_sphere_area(spec.dim) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 * spec.h : spec.h;
        if (spec.geometry == Geometry::RadialExterior)
            w *= omega * std::pow(g.x[i], spec.dim - 1);
        g.qw[i] = w;
    }
    return g;
}

double Grid::integrate(const std::vector<double>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += qw[i] * f[i];
    return s;
}

} // namespace dampwave
