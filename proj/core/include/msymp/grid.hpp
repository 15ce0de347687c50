#ifndef MSYMP_GRID_HPP
#define MSYMP_GRID_HPP

#include <span>
#include <vector>

namespace msymp {

/// Uniform 1D grid. Periodic grids place n nodes on [x0, x0+length) with
/// spacing length/n; bounded grids place n nodes on [x0, x0+length]
/// inclusive with spacing length/(n-1).
struct Grid1D {
    int n = 0;
    double length = 1.0;
    double x0 = 0.0;
    bool periodic = true;

    double dx() const { return periodic ? length / n : length / (n - 1); }
    double x(int i) const { return x0 + i * dx(); }
};

/// Throws std::invalid_argument unless n >= 8 and length > 0.
void validate(const Grid1D& grid);

/// Second-order first derivative: centered in the interior with periodic
/// wraparound, or one-sided three-point stencils at the ends of a bounded
/// grid. On a periodic grid the centered stencil obeys discrete summation
/// by parts: sum f (ddx g) = -sum (ddx f) g exactly.
std::vector<double> ddx(std::span<const double> f, const Grid1D& grid);

/// One dependent variable sampled on a grid, split as a linear ramp plus a
/// periodic remainder: value(i) = v[i] + x_slope * x_i. The split lets a
/// periodic grid carry a mean gradient (a mean flow enters through the flow
/// potential's slope).
struct Field {
    std::vector<double> v;
    double x_slope = 0.0;
};

/// Derivative of a field including its ramp: ddx(v) + x_slope.
std::vector<double> ddx(const Field& f, const Grid1D& grid);

/// Full sample values v[i] + x_slope * x_i.
std::vector<double> materialize(const Field& f, const Grid1D& grid);

}  // namespace msymp

#endif
