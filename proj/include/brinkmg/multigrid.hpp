#pragma once

#include <cmath>

#include "brinkmg/assembly.hpp"
#include "brinkmg/bsr.hpp"
#include "brinkmg/lfa.hpp"
#include "brinkmg/mms.hpp"
#include "brinkmg/transfer.hpp"

namespace brinkmg {

/// Damping choice for the relaxation: a literal value, 1, or the optimal
/// closed form resolved per level from that level's r.
struct Damping {
    enum class Kind { Literal, One, Opt } kind = Kind::One;
    double value = 1.0;

    static Damping one() { return {Kind::One, 1.0}; }
    static Damping opt() { return {Kind::Opt, 0.0}; }
    static Damping literal(double v) { return {Kind::Literal, v}; }

    double resolve(double r) const {
        switch (kind) {
            case Kind::One: return 1.0;
            case Kind::Opt: return spectral_bounds(r).omega_opt;
            default: return value;
        }
    }
};

struct CycleConfig {
    int n = 64;
    double eps = 1.0;
    Damping omega = Damping::one();
    int nu1 = 1, nu2 = 1;
    int schur_m = 3;        // weighted Jacobi sweeps; 0 = assembled exact solve
    double omega_j = 0.8;
    int levels = 0;         // 0 = coarsen down to n = 4; 2 = two-grid
    double tol = 1e-10;
    int max_iter = 100;
    uint64_t seed = 42;
};

inline void validate_config(const CycleConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (cfg.nu1 + cfg.nu2 < 1) throw std::invalid_argument("config: nu1 + nu2 must be >= 1");
    if (cfg.max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
    if (cfg.levels == 1 || cfg.levels < 0)
        throw std::invalid_argument("config: levels must be 0 or >= 2");
    if (cfg.levels >= 2 && (cfg.n >> (cfg.levels - 1)) < 4)
        throw std::invalid_argument("config: hierarchy would coarsen below n = 4");
}

struct SolveReport {
    int iterations = 0;
    double rho_hat = 0;              // (||r_k|| / ||r_0||)^(1/k)
    std::vector<double> history;     // relative residual norms, k = 1..iterations
    bool converged = false;
};

/// Direct solve of K x = b on a coarse grid: K assembled by unit vectors and
/// augmented with one row/column enforcing sum(p) = 0, so the returned
/// pressure has mean zero and a consistent rhs is solved exactly.
class CoarseSolver {
  public:
    CoarseSolver(const StaggeredGrid& g, const OperatorParams& params)
        : grid_(g), dim_(static_cast<int>(state_size(make_state(g)))) {
        const int np = g.n * g.n;
        DenseMatrix aug(dim_ + 1, dim_ + 1);
        const DenseMatrix k = assemble_K(g, params);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) aug(i, j) = k(i, j);
        for (int p = dim_ - np; p < dim_; ++p) {
            aug(dim_, p) = 1.0;
            aug(p, dim_) = 1.0;
        }
        lu_ = LuFactor::factor(std::move(aug));
    }

    StateVector solve(const StateVector& b) const {
        std::vector<double> rhs = state_pack(b);
        rhs.push_back(0.0);
        lu_.solve_inplace(rhs);
        rhs.pop_back();
        return state_unpack(grid_, rhs);
    }

  private:
    StaggeredGrid grid_;
    int dim_;
    LuFactor lu_;
};

/// Convenience form of the coarsest-level solve for tests.
inline StateVector coarse_solve(const StateVector& b, const OperatorParams& params) {
    return CoarseSolver(b.grid, params).solve(b);
}

/// One smoothing level. All iteration parameters (omega, nu, m) come from
/// the config at cycle time, so a hierarchy can be reused across sweeps.
struct Level {
    StaggeredGrid grid;
    OperatorParams params;
    SchurContext schur;
};

struct Hierarchy {
    std::vector<Level> levels;                  // finest first, all smoothing levels
    std::shared_ptr<const CoarseSolver> coarse;
    StaggeredGrid coarse_grid;
    OperatorParams coarse_params;
};

/// Rediscretized hierarchy: same eps on every level, h doubled (hence r
/// quadrupled) per coarsening.
inline Hierarchy build_hierarchy(const CycleConfig& cfg) {
    validate_config(cfg);
    Hierarchy hier;
    int depth = cfg.levels;
    if (depth == 0) {
        depth = 1;
        for (int m = cfg.n; m > 4; m /= 2) ++depth;
    }
    int n = cfg.n;
    for (int lev = 0; lev < depth - 1; ++lev, n /= 2) {
        const StaggeredGrid g = build_grid(n);
        const OperatorParams p = make_operator_params(cfg.eps, g);
        hier.levels.push_back({g, p, make_schur_context(g, p, cfg.omega_j, cfg.schur_m)});
    }
    hier.coarse_grid = build_grid(n);
    hier.coarse_params = make_operator_params(cfg.eps, hier.coarse_grid);
    hier.coarse = std::make_shared<const CoarseSolver>(hier.coarse_grid, hier.coarse_params);
    return hier;
}

namespace detail {

inline void v_cycle_recurse(Hierarchy& hier, size_t lev, StateVector& x,
                            const StateVector& b, const CycleConfig& cfg) {
    if (lev == hier.levels.size()) {
        x = hier.coarse->solve(b);
        return;
    }
    Level& level = hier.levels[lev];
    level.schur.omega_j = cfg.omega_j;
    level.schur.m = cfg.schur_m;
    const double omega = cfg.omega.resolve(level.params.r);

    for (int s = 0; s < cfg.nu1; ++s) x = bsr_step(x, b, level.schur, omega);
    const StateVector r = residual(x, b, level.params);
    StateVector xc = make_state(build_grid(level.grid.n / 2));
    const StateVector rc = restrict_state(r);
    v_cycle_recurse(hier, lev + 1, xc, rc, cfg);
    state_add_scaled(x, 1.0, prolong_state(xc));
    for (int s = 0; s < cfg.nu2; ++s) x = bsr_step(x, b, level.schur, omega);
}

}  // namespace detail

/// One V(nu1, nu2) cycle on the finest level of the hierarchy (with
/// levels = 2 this is exactly the two-grid cycle).
inline void v_cycle(Hierarchy& hier, StateVector& x, const StateVector& b,
                    const CycleConfig& cfg) {
    detail::v_cycle_recurse(hier, 0, x, b, cfg);
}

/// Iterate cycles on the manufactured problem from a seeded random initial
/// guess until ||r_k||/||r_0|| <= tol; reports the measured factor
/// rho_hat = (||r_k||/||r_0||)^(1/k). Non-convergence is reported, not fatal.
inline SolveReport solve_with(Hierarchy& hier, const CycleConfig& cfg,
                              StateVector* final_state = nullptr) {
    validate_config(cfg);
    // at n = 4 with levels = 0 there are no smoothing levels: every cycle is
    // just the direct solve
    const StaggeredGrid fine_grid =
        hier.levels.empty() ? hier.coarse_grid : hier.levels.front().grid;
    const OperatorParams fine_params =
        hier.levels.empty() ? hier.coarse_params : hier.levels.front().params;
    if (fine_grid.n != cfg.n || fine_params.eps != cfg.eps)
        throw std::invalid_argument("solve_with: hierarchy does not match config");
    const int coarsest = cfg.levels == 0 ? 4 : cfg.n >> (cfg.levels - 1);
    if (hier.coarse_grid.n != coarsest)
        throw std::invalid_argument("solve_with: hierarchy depth does not match config");
    const ManufacturedCase mc{cfg.eps};
    const StateVector b = rhs_state(fine_grid, mc);
    StateVector x = make_state(fine_grid);
    fill_random(x, cfg.seed);

    const double r0 = state_norm(residual(x, b, fine_params));
    SolveReport rep;
    double rel = 1.0;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        v_cycle(hier, x, b, cfg);
        rel = state_norm(residual(x, b, fine_params)) / r0;
        rep.history.push_back(rel);
        rep.iterations = k;
        if (rel <= cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.rho_hat = std::pow(rel, 1.0 / rep.iterations);
    if (final_state) *final_state = x;
    return rep;
}

inline SolveReport solve(const CycleConfig& cfg, StateVector* final_state = nullptr) {
    Hierarchy hier = build_hierarchy(cfg);
    return solve_with(hier, cfg, final_state);
}

/// Max-norm discretization errors of the manufactured solution at mesh n,
/// velocity and mean-adjusted pressure, from a V(1,1) solve to tol 1e-10.
struct MmsErrors {
    double err_u = 0;
    double err_p = 0;
};

inline MmsErrors discretization_error(int n, double eps) {
    CycleConfig cfg;
    cfg.n = n;
    cfg.eps = eps;
    cfg.omega = Damping::one();
    cfg.nu1 = cfg.nu2 = 1;
    cfg.schur_m = 3;
    cfg.levels = 0;
    cfg.tol = 1e-10;
    cfg.max_iter = 200;
    StateVector x;
    const SolveReport rep = solve(cfg, &x);
    if (!rep.converged) throw std::runtime_error("discretization_error: solver did not converge");

    const StateVector ex = exact_state(x.grid, ManufacturedCase{eps});
    MmsErrors e;
    for (size_t k = 0; k < x.u.size(); ++k)
        e.err_u = std::max(e.err_u, std::abs(x.u.val[k] - ex.u.val[k]));
    for (size_t k = 0; k < x.v.size(); ++k)
        e.err_u = std::max(e.err_u, std::abs(x.v.val[k] - ex.v.val[k]));
    const double mean_num = field_mean(x.p), mean_ex = field_mean(ex.p);
    for (size_t k = 0; k < x.p.size(); ++k)
        e.err_p = std::max(e.err_p, std::abs((x.p.val[k] - mean_num) - (ex.p.val[k] - mean_ex)));
    return e;
}

}  // namespace brinkmg
