// Command-line driver: LFA smoothing/two-grid predictions, multigrid solves,
// convergence-factor tables, and manufactured-solution order checks, emitted
// as CSV for plotting and regression diffing.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brinkmg/multigrid.hpp"

namespace {

using namespace brinkmg;

/// Accepts plain floats and power notation like 2^-8.
double parse_eps(const std::string& s) {
    const auto caret = s.find('^');
    if (caret == std::string::npos) return std::stod(s);
    const double base = std::stod(s.substr(0, caret));
    const double expo = std::stod(s.substr(caret + 1));
    return std::pow(base, expo);
}

Damping parse_omega(const std::string& s) {
    if (s == "one") return Damping::one();
    if (s == "opt") return Damping::opt();
    return Damping::literal(std::stod(s));
}

struct Output {
    FILE* f = stdout;
    ~Output() {
        if (f != stdout) std::fclose(f);
    }
    bool open(const std::string& path) {
        if (path.empty()) return true;
        f = std::fopen(path.c_str(), "w");
        return f != nullptr;
    }
    void line(const std::string& s) { std::fprintf(f, "%s\n", s.c_str()); }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::vector<std::string> kTableEps = {"1", "2^-2", "2^-4", "2^-6", "2^-8"};

int cmd_lfa_smoothing(const std::vector<std::string>& eps_list, double h, Output& out) {
    out.line("eps,h,r,d1,d2,omega_opt,mu_opt,mu_omega1");
    for (const auto& es : eps_list) {
        const double eps = parse_eps(es);
        const OperatorParams p = make_operator_params(eps, h);
        const SpectralBounds b = spectral_bounds(p.r);
        out.line(fmt(eps) + "," + fmt(p.h) + "," + fmt(p.r) + "," + fmt(b.d1) + "," +
                 fmt(b.d2) + "," + fmt(b.omega_opt) + "," + fmt(b.mu_opt) + "," +
                 fmt(b.mu_omega1));
    }
    return 0;
}

int cmd_lfa_twogrid(double eps, double h, const Damping& omega, int nu1, int nu2,
                    int samples, Output& out) {
    const OperatorParams p = make_operator_params(eps, h);
    const double w = omega.resolve(p.r);
    const double rho = twogrid_lfa_factor(p, w, nu1, nu2, samples);
    out.line("eps,h,r,omega,nu,rho");
    out.line(fmt(eps) + "," + fmt(p.h) + "," + fmt(p.r) + "," + fmt(w) + "," +
             std::to_string(nu1 + nu2) + "," + fmt(rho));
    return 0;
}

int cmd_solve(const CycleConfig& cfg, Output& out) {
    const SolveReport rep = solve(cfg);
    out.line("iter,relres");
    out.line("0,1");
    for (size_t k = 0; k < rep.history.size(); ++k)
        out.line(std::to_string(k + 1) + "," + fmt(rep.history[k]));
    return rep.converged ? 0 : 2;
}

struct TableSolveOpts {
    double omega_j = 0.8;
    double tol = 1e-10;
    int max_iter = 100;
};

int cmd_table(int name, const std::string& omega_filter, int n, int schur_m, int samples,
              int runs, uint64_t seed, const TableSolveOpts& opts, Output& out) {
    std::vector<std::string> omegas = {"one", "opt"};
    if (!omega_filter.empty()) omegas = {omega_filter};

    if (name == 1) {
        out.line("omega,eps,mu,rho1,rho2,rho3,rho4");
        for (const auto& om : omegas) {
            for (const auto& es : kTableEps) {
                const double eps = parse_eps(es);
                const OperatorParams p = make_operator_params(eps, 1.0 / n);
                const SpectralBounds b = spectral_bounds(p.r);
                const double w = (om == "opt") ? b.omega_opt : 1.0;
                const double mu = (om == "opt") ? b.mu_opt : b.mu_omega1;
                const auto rho = twogrid_lfa_factors(p, w, 4, samples);
                out.line(om + "," + es + "," + fmt(mu) + "," + fmt(rho[0]) + "," +
                         fmt(rho[1]) + "," + fmt(rho[2]) + "," + fmt(rho[3]));
            }
        }
        return 0;
    }
    if (name == 2 || name == 3) {
        const std::string om = (name == 2) ? "one" : "opt";
        out.line("omega,eps,rhohat1,rhohat2,rhohat3,rhohat4");
        for (const auto& es : kTableEps) {
            CycleConfig cfg;
            cfg.n = n;
            cfg.eps = parse_eps(es);
            cfg.levels = 2;
            cfg.nu2 = 0;
            cfg.schur_m = schur_m;
            cfg.omega_j = opts.omega_j;
            cfg.tol = opts.tol;
            cfg.max_iter = opts.max_iter;
            cfg.omega = parse_omega(om);
            Hierarchy hier = build_hierarchy(cfg);
            std::string row = om + "," + es;
            for (int nu = 1; nu <= 4; ++nu) {
                cfg.nu1 = nu;
                double acc = 0;
                for (int run = 0; run < runs; ++run) {
                    cfg.seed = seed + static_cast<uint64_t>(run);
                    acc += solve_with(hier, cfg).rho_hat;
                }
                row += "," + fmt(acc / runs);
            }
            out.line(row);
        }
        return 0;
    }
    if (name == 4) {
        const int ns[4] = {32, 64, 128, 256};
        out.line("omega,eps,n32,n64,n128,n256");
        for (const auto& om : omegas) {
            for (const auto& es : kTableEps) {
                std::string row = om + "," + es;
                for (int ni = 0; ni < 4; ++ni) {
                    CycleConfig cfg;
                    cfg.n = ns[ni];
                    cfg.eps = parse_eps(es);
                    cfg.levels = 0;
                    cfg.schur_m = schur_m;
                    cfg.omega_j = opts.omega_j;
                    cfg.tol = opts.tol;
                    cfg.max_iter = opts.max_iter;
                    cfg.omega = parse_omega(om);
                    cfg.seed = seed;
                    const SolveReport rep = solve(cfg);
                    row += "," + (rep.converged ? std::to_string(rep.iterations)
                                                : std::string(">") + std::to_string(cfg.max_iter));
                }
                out.line(row);
            }
        }
        return 0;
    }
    std::fprintf(stderr, "table: --name must be 1, 2, 3 or 4\n");
    return 1;
}

int cmd_mms(double eps, const std::vector<int>& ns, Output& out) {
    out.line("eps,n,err_u,err_p,rate_u,rate_p");
    double prev_u = 0, prev_p = 0;
    bool have_prev = false;
    for (int n : ns) {
        const MmsErrors e = discretization_error(n, eps);
        std::string row = fmt(eps) + "," + std::to_string(n) + "," + fmt(e.err_u) + "," +
                          fmt(e.err_p);
        if (have_prev)
            row += "," + fmt(prev_u / e.err_u) + "," + fmt(prev_p / e.err_p);
        else
            row += ",,";
        out.line(row);
        prev_u = e.err_u;
        prev_p = e.err_p;
        have_prev = true;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Matrix-free staggered-grid multigrid for the Stokes-Darcy Brinkman equations\n"
        "with Vanka-based Braess-Sarazin relaxation and a local Fourier analysis engine."};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");
    app.footer(
        "Reference sweeps:\n"
        "  lfa-smoothing --eps 1 --eps 2^-2 --eps 2^-4 --eps 2^-6 --eps 2^-8 --n 64\n"
        "      closed-form smoothing factors and optimal damping per epsilon\n"
        "  table --name 1                 LFA two-grid factors, h=1/64, omega one and opt\n"
        "  table --name 2                 measured two-grid factors, omega=1, 3 Jacobi sweeps\n"
        "  table --name 3                 measured two-grid factors, optimal omega\n"
        "  table --name 4 --schur-iters 1 V(1,1) iteration counts over n=32..256\n"
        "  solve --n 64 --eps 2^-4 --levels 0 --omega one --schur-iters 2 --tol 1e-10\n"
        "      residual history of one V(1,1) solve (CSV iter,relres)\n"
        "  mms-convergence --eps 1 --n 32 --n 64 --n 128\n"
        "      manufactured-solution errors and convergence rates");

    std::string eps_s = "1";
    std::vector<std::string> eps_list;
    std::string omega_s = "one";
    std::string out_path;
    int n = 64;
    double mesh_h = 0.0;  // overrides 1/n for the LFA commands when set
    int nu1 = 1, nu2 = 1;
    int schur_m = 3;
    double omega_j = 0.8;
    int levels = 0;
    double tol = 1e-10;
    int max_iter = 100;
    uint64_t seed = 42;
    int samples = 64;
    int table_name = 0;
    int runs = 3;
    std::vector<int> mms_ns;

    auto add_shared = [&](CLI::App* cmd, bool eps_vector = false) {
        if (eps_vector)
            cmd->add_option("--eps", eps_list, "epsilon values (accepts 2^-k notation)");
        else
            cmd->add_option("--eps", eps_s, "epsilon (accepts 2^-k notation)");
        cmd->add_option("--n", n, "cells per side of the finest grid (power of two >= 4)");
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    CLI::App* c_smooth = app.add_subcommand(
        "lfa-smoothing", "closed-form smoothing factors and optimal parameters");
    add_shared(c_smooth, true);
    c_smooth->add_option("--h", mesh_h, "meshsize (overrides 1/n)");

    CLI::App* c_twogrid =
        app.add_subcommand("lfa-twogrid", "two-grid LFA convergence factor");
    add_shared(c_twogrid);
    c_twogrid->add_option("--h", mesh_h, "meshsize (overrides 1/n)");
    c_twogrid->add_option("--omega", omega_s, "damping: one, opt, or a literal value");
    c_twogrid->add_option("--nu1", nu1, "pre-smoothing steps");
    c_twogrid->add_option("--nu2", nu2, "post-smoothing steps");
    c_twogrid->add_option("--samples", samples, "frequency samples per dimension");

    CLI::App* c_solve = app.add_subcommand("solve", "run a multigrid solve, emit history");
    add_shared(c_solve);
    c_solve->add_option("--omega", omega_s, "damping: one, opt, or a literal value");
    c_solve->add_option("--nu1", nu1, "pre-smoothing steps");
    c_solve->add_option("--nu2", nu2, "post-smoothing steps");
    c_solve->add_option("--schur-iters", schur_m, "Jacobi sweeps for the Schur system (0=direct)");
    c_solve->add_option("--omega-j", omega_j, "Jacobi damping for the Schur system");
    c_solve->add_option("--levels", levels, "0 = coarsen to n=4, 2 = two-grid");
    c_solve->add_option("--tol", tol, "relative residual target");
    c_solve->add_option("--max-iter", max_iter, "iteration cap");
    c_solve->add_option("--seed", seed, "initial-guess seed");

    CLI::App* c_table = app.add_subcommand("table", "reproduce a reference sweep as CSV");
    c_table->add_option("--name", table_name, "1=LFA factors, 2/3=measured two-grid, 4=V(1,1) counts")
        ->required();
    c_table->add_option("--omega", omega_s, "restrict to one damping block (one|opt)")
        ->default_str("");
    c_table->add_option("--n", n, "finest grid for tables 1-3");
    c_table->add_option("--schur-iters", schur_m, "Jacobi sweeps (tables 2-4)");
    c_table->add_option("--samples", samples, "LFA samples (table 1)");
    c_table->add_option("--runs", runs, "seeded runs averaged per cell (tables 2-3)");
    c_table->add_option("--omega-j", omega_j, "Jacobi damping for the Schur system");
    c_table->add_option("--tol", tol, "relative residual target");
    c_table->add_option("--max-iter", max_iter, "iteration cap");
    c_table->add_option("--seed", seed, "base seed");
    c_table->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* c_mms = app.add_subcommand(
        "mms-convergence", "manufactured-solution discretization errors");
    c_mms->add_option("--eps", eps_s, "epsilon (accepts 2^-k notation)");
    c_mms->add_option("--n", mms_ns, "grid sizes (repeatable; default 32 64 128)");
    c_mms->add_option("--out", out_path, "output file (default stdout)");

    std::string omega_default_marker = omega_s;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    Output out;
    if (!out.open(out_path)) {
        std::fprintf(stderr, "cannot open output file %s\n", out_path.c_str());
        return 1;
    }

    try {
        const double h = mesh_h > 0.0 ? mesh_h : 1.0 / n;
        if (*c_smooth) {
            if (eps_list.empty()) eps_list = {eps_s};
            return cmd_lfa_smoothing(eps_list, h, out);
        }
        if (*c_twogrid)
            return cmd_lfa_twogrid(parse_eps(eps_s), h, parse_omega(omega_s), nu1, nu2,
                                   samples, out);
        if (*c_solve) {
            CycleConfig cfg;
            cfg.n = n;
            cfg.eps = parse_eps(eps_s);
            cfg.omega = parse_omega(omega_s);
            cfg.nu1 = nu1;
            cfg.nu2 = nu2;
            cfg.schur_m = schur_m;
            cfg.omega_j = omega_j;
            cfg.levels = levels;
            cfg.tol = tol;
            cfg.max_iter = max_iter;
            cfg.seed = seed;
            return cmd_solve(cfg, out);
        }
        if (*c_table) {
            const bool filtered = c_table->count("--omega") > 0;
            const int table_schur_m = c_table->count("--schur-iters") ? schur_m
                                      : (table_name == 4 ? 1 : 3);
            return cmd_table(table_name, filtered ? omega_s : "", n, table_schur_m, samples,
                             runs, seed, TableSolveOpts{omega_j, tol, max_iter}, out);
        }
        if (*c_mms) {
            if (mms_ns.empty()) mms_ns = {32, 64, 128};
            return cmd_mms(parse_eps(eps_s), mms_ns, out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
