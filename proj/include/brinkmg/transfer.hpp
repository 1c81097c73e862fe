#pragma once

#include "brinkmg/grid.hpp"

namespace brinkmg {

/// Staggered six-point restriction for velocities and four-point cell
/// average for pressure, fine meshsize h to 2h.
///
/// A coarse u-point lies on a fine u column but midway between two fine u
/// rows, so the weight-2 legs are the two y-offset fine points and the four
/// diagonal legs carry weight 1 (all divided by 8); v is the mirror image.
/// A coarse cell contains exactly four fine cells, each averaged with
/// weight 1/4. Every row sums to 1 and no leg leaves the unknown lattice.
inline StateVector restrict_state(const StateVector& fine) {
    if (fine.grid.n < 8)
        throw std::invalid_argument("restrict_state: no coarser nested grid exists");
    const StaggeredGrid cg = build_grid(fine.grid.n / 2);
    StateVector out = make_state(cg);
    const int nc = cg.n;
    const Field& uf = fine.u;
    const Field& vf = fine.v;
    const Field& pf = fine.p;
    for (int j = 1; j <= nc; ++j)
        for (int i = 1; i <= nc - 1; ++i)
            out.u(i, j) = (2.0 * (uf(2 * i, 2 * j - 1) + uf(2 * i, 2 * j)) +
                           uf(2 * i - 1, 2 * j - 1) + uf(2 * i + 1, 2 * j - 1) +
                           uf(2 * i - 1, 2 * j) + uf(2 * i + 1, 2 * j)) / 8.0;
    for (int j = 1; j <= nc - 1; ++j)
        for (int i = 1; i <= nc; ++i)
            out.v(i, j) = (2.0 * (vf(2 * i - 1, 2 * j) + vf(2 * i, 2 * j)) +
                           vf(2 * i - 1, 2 * j - 1) + vf(2 * i, 2 * j - 1) +
                           vf(2 * i - 1, 2 * j + 1) + vf(2 * i, 2 * j + 1)) / 8.0;
    for (int j = 1; j <= nc; ++j)
        for (int i = 1; i <= nc; ++i)
            out.p(i, j) = (pf(2 * i - 1, 2 * j - 1) + pf(2 * i, 2 * j - 1) +
                           pf(2 * i - 1, 2 * j) + pf(2 * i, 2 * j)) / 4.0;
    return out;
}

/// Prolongation P = 4 R^T, realized as the transpose scatter of the
/// restriction legs so the adjoint identity <P xc, yf> = 4 <xc, R yf> holds
/// by construction.
inline StateVector prolong_state(const StateVector& coarse) {
    const StaggeredGrid fg = build_grid(coarse.grid.n * 2);
    StateVector out = make_state(fg);
    const int nc = coarse.grid.n;
    for (int j = 1; j <= nc; ++j)
        for (int i = 1; i <= nc - 1; ++i) {
            const double w = coarse.u(i, j);
            out.u(2 * i, 2 * j - 1) += w;          // 4 * 2/8
            out.u(2 * i, 2 * j) += w;
            out.u(2 * i - 1, 2 * j - 1) += 0.5 * w;  // 4 * 1/8
            out.u(2 * i + 1, 2 * j - 1) += 0.5 * w;
            out.u(2 * i - 1, 2 * j) += 0.5 * w;
            out.u(2 * i + 1, 2 * j) += 0.5 * w;
        }
    for (int j = 1; j <= nc - 1; ++j)
        for (int i = 1; i <= nc; ++i) {
            const double w = coarse.v(i, j);
            out.v(2 * i - 1, 2 * j) += w;
            out.v(2 * i, 2 * j) += w;
            out.v(2 * i - 1, 2 * j - 1) += 0.5 * w;
            out.v(2 * i, 2 * j - 1) += 0.5 * w;
            out.v(2 * i - 1, 2 * j + 1) += 0.5 * w;
            out.v(2 * i, 2 * j + 1) += 0.5 * w;
        }
    for (int j = 1; j <= nc; ++j)
        for (int i = 1; i <= nc; ++i) {
            const double w = coarse.p(i, j);   // 4 * 1/4
            out.p(2 * i - 1, 2 * j - 1) += w;
            out.p(2 * i, 2 * j - 1) += w;
            out.p(2 * i - 1, 2 * j) += w;
            out.p(2 * i, 2 * j) += w;
        }
    return out;
}

}  // namespace brinkmg
