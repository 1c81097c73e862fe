#pragma once

#include <numbers>

#include "brinkmg/operators.hpp"

namespace brinkmg {

/// Manufactured solenoidal benchmark on the unit square,
///   u =  pi sin^2(pi x) sin(2 pi y),
///   v = -pi sin(2 pi x) sin^2(pi y),
///   p =  sin(pi y) - 2/pi,
/// with div(u,v) = 0 and mean-zero pressure. The forcing below is the
/// symbolic evaluation of -eps^2 Laplacian(u,v) + (u,v) + grad p:
///   f1 = (4 pi^3 eps^2 + pi) sin^2(pi x) sin(2 pi y)
///        - 2 pi^3 eps^2 cos(2 pi x) sin(2 pi y),
///   f2 = -(4 pi^3 eps^2 + pi) sin(2 pi x) sin^2(pi y)
///        + 2 pi^3 eps^2 sin(2 pi x) cos(2 pi y) + pi cos(pi y).
struct ManufacturedCase {
    double eps = 1.0;

    double u(double x, double y) const {
        const double pi = std::numbers::pi;
        const double s = std::sin(pi * x);
        return pi * s * s * std::sin(2 * pi * y);
    }
    double v(double x, double y) const {
        const double pi = std::numbers::pi;
        const double s = std::sin(pi * y);
        return -pi * std::sin(2 * pi * x) * s * s;
    }
    double p(double /*x*/, double y) const {
        const double pi = std::numbers::pi;
        return std::sin(pi * y) - 2.0 / pi;
    }
    double f1(double x, double y) const {
        const double pi = std::numbers::pi;
        const double pi3e2 = pi * pi * pi * eps * eps;
        const double s = std::sin(pi * x);
        return (4.0 * pi3e2 + pi) * s * s * std::sin(2 * pi * y) -
               2.0 * pi3e2 * std::cos(2 * pi * x) * std::sin(2 * pi * y);
    }
    double f2(double x, double y) const {
        const double pi = std::numbers::pi;
        const double pi3e2 = pi * pi * pi * eps * eps;
        const double s = std::sin(pi * y);
        return -(4.0 * pi3e2 + pi) * std::sin(2 * pi * x) * s * s +
               2.0 * pi3e2 * std::sin(2 * pi * x) * std::cos(2 * pi * y) +
               pi * std::cos(pi * y);
    }
};

/// Exact solution sampled at the staggered unknown locations:
/// u at (i h, (j-1/2) h), v at ((i-1/2) h, j h), p at cell centers.
inline StateVector exact_state(const StaggeredGrid& g, const ManufacturedCase& mc) {
    StateVector s = make_state(g);
    const double h = g.h;
    for (int j = 1; j <= g.n; ++j)
        for (int i = 1; i <= g.n - 1; ++i) s.u(i, j) = mc.u(i * h, (j - 0.5) * h);
    for (int j = 1; j <= g.n - 1; ++j)
        for (int i = 1; i <= g.n; ++i) s.v(i, j) = mc.v((i - 0.5) * h, j * h);
    for (int j = 1; j <= g.n; ++j)
        for (int i = 1; i <= g.n; ++i) s.p(i, j) = mc.p((i - 0.5) * h, (j - 0.5) * h);
    return s;
}

/// Right-hand side (f1, f2, -g) with g = 0, sampled at the velocity points.
inline StateVector rhs_state(const StaggeredGrid& g, const ManufacturedCase& mc) {
    StateVector s = make_state(g);
    const double h = g.h;
    for (int j = 1; j <= g.n; ++j)
        for (int i = 1; i <= g.n - 1; ++i) s.u(i, j) = mc.f1(i * h, (j - 0.5) * h);
    for (int j = 1; j <= g.n - 1; ++j)
        for (int i = 1; i <= g.n; ++i) s.v(i, j) = mc.f2((i - 0.5) * h, j * h);
    return s;
}

}  // namespace brinkmg
