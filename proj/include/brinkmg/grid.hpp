#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace brinkmg {

/// Uniform n-by-n MAC mesh on the unit square. Velocity components live on
/// interior face midpoints, pressure at cell centers; boundary-normal
/// velocities are Dirichlet values and are not stored.
struct StaggeredGrid {
    int n = 0;      // cells per side, power of two >= 4
    double h = 0;   // meshsize, 1/n
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline StaggeredGrid build_grid(int n) {
    if (n < 4 || !is_power_of_two(n))
        throw std::invalid_argument("build_grid: n must be a power of two >= 4");
    return {n, 1.0 / n};
}

enum class FieldKind { U, V, P };

/// One scalar unknown field on its staggered lattice. Storage is row-major
/// with the x-index fastest; accessors are 1-based to match the lattice
/// numbering (u: i=1..n-1, j=1..n; v: i=1..n, j=1..n-1; p: i,j=1..n).
struct Field {
    FieldKind kind = FieldKind::P;
    int nx = 0, ny = 0;
    std::vector<double> val;

    Field() = default;
    Field(FieldKind k, int n) : kind(k) {
        switch (k) {
            case FieldKind::U: nx = n - 1; ny = n; break;
            case FieldKind::V: nx = n; ny = n - 1; break;
            case FieldKind::P: nx = n; ny = n; break;
        }
        val.assign(static_cast<size_t>(nx) * ny, 0.0);
    }
    Field(FieldKind k, const StaggeredGrid& g) : Field(k, g.n) {}

    double& operator()(int i, int j) {
        assert(i >= 1 && i <= nx && j >= 1 && j <= ny);
        return val[static_cast<size_t>(j - 1) * nx + (i - 1)];
    }
    double operator()(int i, int j) const {
        assert(i >= 1 && i <= nx && j >= 1 && j <= ny);
        return val[static_cast<size_t>(j - 1) * nx + (i - 1)];
    }
    /// Value with out-of-lattice reads mapped to the eliminated Dirichlet
    /// boundary value 0.
    double at_or_zero(int i, int j) const {
        if (i < 1 || i > nx || j < 1 || j > ny) return 0.0;
        return (*this)(i, j);
    }

    size_t size() const { return val.size(); }
    void fill(double x) { std::fill(val.begin(), val.end(), x); }
};

inline Field like(const Field& f) {
    Field out;
    out.kind = f.kind;
    out.nx = f.nx;
    out.ny = f.ny;
    out.val.assign(f.val.size(), 0.0);
    return out;
}

inline double field_dot(const Field& a, const Field& b) {
    assert(a.size() == b.size());
    double s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += a.val[k] * b.val[k];
    return s;
}

/// The saddle-point unknown (and rhs/residual) as a (u, v, p) triple sharing
/// one grid.
struct StateVector {
    StaggeredGrid grid;
    Field u, v, p;
};

inline StateVector make_state(const StaggeredGrid& g) {
    return {g, Field(FieldKind::U, g), Field(FieldKind::V, g), Field(FieldKind::P, g)};
}

inline size_t state_size(const StateVector& x) {
    return x.u.size() + x.v.size() + x.p.size();
}

inline double state_dot(const StateVector& a, const StateVector& b) {
    return field_dot(a.u, b.u) + field_dot(a.v, b.v) + field_dot(a.p, b.p);
}

/// Euclidean norm over all u, v, p entries concatenated.
inline double state_norm(const StateVector& x) { return std::sqrt(state_dot(x, x)); }

inline void state_scale(StateVector& x, double a) {
    for (auto* f : {&x.u, &x.v, &x.p})
        for (double& v : f->val) v *= a;
}

/// y += a*x
inline void state_add_scaled(StateVector& y, double a, const StateVector& x) {
    assert(y.grid.n == x.grid.n);
    for (size_t k = 0; k < y.u.size(); ++k) y.u.val[k] += a * x.u.val[k];
    for (size_t k = 0; k < y.v.size(); ++k) y.v.val[k] += a * x.v.val[k];
    for (size_t k = 0; k < y.p.size(); ++k) y.p.val[k] += a * x.p.val[k];
}

inline double field_mean(const Field& f) {
    double s = 0;
    for (double v : f.val) s += v;
    return s / static_cast<double>(f.size());
}

inline double field_max_abs(const Field& f) {
    double m = 0;
    for (double v : f.val) m = std::max(m, std::abs(v));
    return m;
}

/// Deterministic 64-bit generator (splitmix64); fixed stream for a given
/// seed on every platform, used for reproducible random initial guesses.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline void fill_random(StateVector& x, uint64_t seed) {
    SplitMix64 rng(seed);
    for (auto* f : {&x.u, &x.v, &x.p})
        for (double& v : f->val) v = rng.uniform();
}

}  // namespace brinkmg
