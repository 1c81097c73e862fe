#pragma once

#include "brinkmg/grid.hpp"

namespace brinkmg {

/// Coefficients of the discrete operator on one level. The shift ratio
/// r = h^2/eps^2 is the single dimensionless parameter the smoother and all
/// LFA formulas depend on.
struct OperatorParams {
    double eps = 1.0;
    double h = 0;
    double r = 0;
};

inline OperatorParams make_operator_params(double eps, double h) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("make_operator_params: eps must be in (0,1]");
    if (!(h > 0.0)) throw std::invalid_argument("make_operator_params: h must be positive");
    return {eps, h, h * h / (eps * eps)};
}

inline OperatorParams make_operator_params(double eps, const StaggeredGrid& g) {
    return make_operator_params(eps, g.h);
}

/// Shifted Laplacian block (eps^2/h^2)[-1; -1, 4+r, -1; -1] applied to a
/// velocity component. In the Dirichlet-normal direction the boundary value
/// is eliminated (missing neighbors contribute zero); in the tangential
/// direction the wall sits half a cell away and ghost reflection
/// (ghost = -first interior value) adds +1 to the center coefficient.
inline Field apply_shifted_laplacian(const Field& f, const OperatorParams& p) {
    if (f.kind == FieldKind::P)
        throw std::invalid_argument("apply_shifted_laplacian: velocity components only");
    const bool normal_is_x = (f.kind == FieldKind::U);
    const double scale = p.eps * p.eps / (p.h * p.h);
    Field out = like(f);
    for (int j = 1; j <= f.ny; ++j) {
        for (int i = 1; i <= f.nx; ++i) {
            double center = 4.0 + p.r;
            double nb = 0.0;
            // x-direction neighbors
            if (i > 1) nb += f(i - 1, j);
            else if (!normal_is_x) center += 1.0;
            if (i < f.nx) nb += f(i + 1, j);
            else if (!normal_is_x) center += 1.0;
            // y-direction neighbors
            if (j > 1) nb += f(i, j - 1);
            else if (normal_is_x) center += 1.0;
            if (j < f.ny) nb += f(i, j + 1);
            else if (normal_is_x) center += 1.0;
            out(i, j) = scale * (center * f(i, j) - nb);
        }
    }
    return out;
}

/// Discrete pressure gradient at the velocity points: central differences
/// over one cell, (1/h)[-1 0 1] in the respective direction. Both
/// neighboring cells always exist for interior velocity points.
inline void apply_gradient(const Field& p, double h, Field& gu, Field& gv) {
    const int n = p.nx;
    gu = Field(FieldKind::U, n);
    gv = Field(FieldKind::V, n);
    const double inv_h = 1.0 / h;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n - 1; ++i) gu(i, j) = (p(i + 1, j) - p(i, j)) * inv_h;
    for (int j = 1; j <= n - 1; ++j)
        for (int i = 1; i <= n; ++i) gv(i, j) = (p(i, j + 1) - p(i, j)) * inv_h;
}

/// Negative divergence per cell, -[(u_E - u_W) + (v_N - v_S)]/h, with
/// boundary-normal velocities equal to 0. This is exactly the negated
/// adjoint of apply_gradient, which keeps the saddle-point operator
/// symmetric.
inline Field apply_divergence(const Field& u, const Field& v, double h) {
    const int n = u.ny;
    Field out(FieldKind::P, n);
    const double inv_h = 1.0 / h;
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= n; ++i) {
            double du = u.at_or_zero(i, j) - u.at_or_zero(i - 1, j);
            double dv = v.at_or_zero(i, j) - v.at_or_zero(i, j - 1);
            out(i, j) = -(du + dv) * inv_h;
        }
    }
    return out;
}

/// Full MAC saddle-point operator: (A u + grad p, A v + grad p, -div u)
/// where A is the shifted Laplacian block.
inline StateVector apply_K(const StateVector& x, const OperatorParams& p) {
    StateVector out = make_state(x.grid);
    out.u = apply_shifted_laplacian(x.u, p);
    out.v = apply_shifted_laplacian(x.v, p);
    Field gu, gv;
    apply_gradient(x.p, p.h, gu, gv);
    for (size_t k = 0; k < out.u.size(); ++k) out.u.val[k] += gu.val[k];
    for (size_t k = 0; k < out.v.size(); ++k) out.v.val[k] += gv.val[k];
    out.p = apply_divergence(x.u, x.v, p.h);
    return out;
}

/// b - K x
inline StateVector residual(const StateVector& x, const StateVector& b,
                            const OperatorParams& p) {
    StateVector r = apply_K(x, p);
    state_scale(r, -1.0);
    state_add_scaled(r, 1.0, b);
    return r;
}

}  // namespace brinkmg
