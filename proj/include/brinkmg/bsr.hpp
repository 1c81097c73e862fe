#pragma once

#include <memory>

#include "brinkmg/dense.hpp"
#include "brinkmg/operators.hpp"
#include "brinkmg/vanka.hpp"

namespace brinkmg {

/// Pressure Schur complement B C^-1 B^T of the Braess-Sarazin smoother,
/// where B = -div and C^-1 applies the Vanka smoother to each velocity
/// component: -div( vanka( grad p ) ).
inline Field apply_schur(const Field& p, const OperatorParams& params) {
    Field gu, gv;
    apply_gradient(p, params.h, gu, gv);
    const Field wu = apply_vanka_stencil(gu, params);
    const Field wv = apply_vanka_stencil(gv, params);
    return apply_divergence(wu, wv, params.h);
}

/// Exact diagonal of the Schur complement by distance coloring: the Schur
/// stencil has radius <= 3 on the pressure grid, so probing with the 49
/// indicator combs of a 7x7 tiling reads off every diagonal entry exactly.
inline Field schur_diagonal(const StaggeredGrid& g, const OperatorParams& params) {
    Field diag(FieldKind::P, g);
    Field comb(FieldKind::P, g);
    for (int c1 = 0; c1 < 7; ++c1) {
        for (int c2 = 0; c2 < 7; ++c2) {
            comb.fill(0.0);
            for (int j = 1 + c2; j <= g.n; j += 7)
                for (int i = 1 + c1; i <= g.n; i += 7) comb(i, j) = 1.0;
            const Field s = apply_schur(comb, params);
            for (int j = 1 + c2; j <= g.n; j += 7)
                for (int i = 1 + c1; i <= g.n; i += 7) diag(i, j) = s(i, j);
        }
    }
    return diag;
}

/// Per-level context of the pressure correction solve: operator parameters,
/// the exact Schur diagonal for weighted Jacobi, the damping omega_j and the
/// sweep count m. m = 0 selects the assembled direct solve used in tests.
struct SchurContext {
    StaggeredGrid grid;
    OperatorParams params;
    Field diag;
    double omega_j = 0.8;
    int m = 3;
    mutable std::shared_ptr<const LuFactor> exact_lu;  // lazy, m == 0 only
};

inline SchurContext make_schur_context(const StaggeredGrid& g, const OperatorParams& params,
                                       double omega_j = 0.8, int m = 3) {
    if (!(omega_j > 0.0 && omega_j <= 1.0))
        throw std::invalid_argument("make_schur_context: omega_j must be in (0,1]");
    if (m < 0) throw std::invalid_argument("make_schur_context: m must be >= 0");
    return {g, params, schur_diagonal(g, params), omega_j, m, nullptr};
}

inline Field apply_schur(const Field& p, const SchurContext& ctx) {
    return apply_schur(p, ctx.params);
}

/// m sweeps of weighted Jacobi on S dp = rhs starting from dp = 0.
inline Field schur_jacobi(const Field& rhs, const SchurContext& ctx) {
    if (ctx.m < 1) throw std::invalid_argument("schur_jacobi: m must be >= 1");
    Field dp = like(rhs);
    for (int sweep = 0; sweep < ctx.m; ++sweep) {
        if (sweep == 0) {
            for (size_t k = 0; k < dp.size(); ++k)
                dp.val[k] = ctx.omega_j * rhs.val[k] / ctx.diag.val[k];
        } else {
            const Field s = apply_schur(dp, ctx.params);
            for (size_t k = 0; k < dp.size(); ++k)
                dp.val[k] += ctx.omega_j * (rhs.val[k] - s.val[k]) / ctx.diag.val[k];
        }
    }
    return dp;
}

/// Direct Schur solve with the constant pressure mode pinned through one
/// augmentation row/column enforcing sum(dp) = 0. Assembled lazily and
/// cached; meant for small grids and exact-solve experiments.
inline Field schur_solve_exact(const Field& rhs, const SchurContext& ctx) {
    const int np = ctx.grid.n * ctx.grid.n;
    if (!ctx.exact_lu) {
        DenseMatrix aug(np + 1, np + 1);
        Field e(FieldKind::P, ctx.grid);
        for (int col = 0; col < np; ++col) {
            e.val[col] = 1.0;
            const Field s = apply_schur(e, ctx.params);
            e.val[col] = 0.0;
            for (int row = 0; row < np; ++row) aug(row, col) = s.val[row];
        }
        for (int k = 0; k < np; ++k) {
            aug(np, k) = 1.0;
            aug(k, np) = 1.0;
        }
        ctx.exact_lu = std::make_shared<const LuFactor>(LuFactor::factor(std::move(aug)));
    }
    std::vector<double> b(np + 1, 0.0);
    for (int k = 0; k < np; ++k) b[k] = rhs.val[k];
    ctx.exact_lu->solve_inplace(b);
    Field dp(FieldKind::P, ctx.grid);
    for (int k = 0; k < np; ++k) dp.val[k] = b[k];
    return dp;
}

inline Field schur_solve(const Field& rhs, const SchurContext& ctx) {
    return ctx.m == 0 ? schur_solve_exact(rhs, ctx) : schur_jacobi(rhs, ctx);
}

/// One Vanka-based Braess-Sarazin sweep: from the residual (r_u, r_p) solve
///   (B C^-1 B^T) dp = B C^-1 r_u - r_p,   du = C^-1 (r_u - B^T dp),
/// then update x <- x + omega (du, dp).
inline StateVector bsr_step(const StateVector& x, const StateVector& b,
                            const SchurContext& ctx, double omega) {
    if (!(omega >= 0.0)) throw std::invalid_argument("bsr_step: omega must be nonnegative");
    const StateVector r = residual(x, b, ctx.params);

    Field rhs = apply_divergence(apply_vanka_stencil(r.u, ctx.params),
                                 apply_vanka_stencil(r.v, ctx.params), ctx.params.h);
    for (size_t k = 0; k < rhs.size(); ++k) rhs.val[k] -= r.p.val[k];

    const Field dp = schur_solve(rhs, ctx);

    Field gu, gv;
    apply_gradient(dp, ctx.params.h, gu, gv);
    for (size_t k = 0; k < gu.size(); ++k) gu.val[k] = r.u.val[k] - gu.val[k];
    for (size_t k = 0; k < gv.size(); ++k) gv.val[k] = r.v.val[k] - gv.val[k];
    const Field du = apply_vanka_stencil(gu, ctx.params);
    const Field dv = apply_vanka_stencil(gv, ctx.params);

    StateVector out = x;
    for (size_t k = 0; k < out.u.size(); ++k) out.u.val[k] += omega * du.val[k];
    for (size_t k = 0; k < out.v.size(); ++k) out.v.val[k] += omega * dv.val[k];
    for (size_t k = 0; k < out.p.size(); ++k) out.p.val[k] += omega * dp.val[k];
    return out;
}

}  // namespace brinkmg
