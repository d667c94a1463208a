#ifndef DAMPWAVE_GRID_HPP
#define DAMPWAVE_GRID_HPP

#include <vector>

namespace dampwave {

enum class Geometry { FullLine, RadialExterior };

struct DomainSpec {
    int dim = 1;
    Geometry geometry = Geometry::FullLine;
    double r_in = 1.0;    // radial only
    double r_outer = 10.0;
    double h = 0.05;

    void validate() const; // throws ConfigInvalid
};

// Uniform 1-D grid: signed coordinate on the full line, radius on radial
// exterior domains. First and last nodes are Dirichlet-pinned.
struct Grid {
    int dim = 1;
    Geometry geometry = Geometry::FullLine;
    double h = 0.05;
    std::vector<double> x;  // node coordinate
    std::vector<double> qw; // trapezoid weight including the surface measure

    static Grid make(const DomainSpec& spec);

    std::size_t size() const { return x.size(); }
    double radius(std::size_t i) const { return geometry == Geometry::FullLine ? std::abs(x[i]) : x[i]; }

    // integral of a nodal function against the quadrature weights
    double integrate(const std::vector<double>& f) const;
};

// Surface area of the unit sphere in R^N.
double unit_sphere_area(int dim);

} // namespace dampwave

#endif
