#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace brinkmg {

/// Row-major dense matrix used for assembled test oracles and the coarsest
/// level direct solve.
struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

/// Assemble the matrix of a linear operator by applying it to unit vectors.
inline DenseMatrix assemble_operator(
    int dim, const std::function<std::vector<double>(const std::vector<double>&)>& apply) {
    DenseMatrix m(dim, dim);
    std::vector<double> e(dim, 0.0);
    for (int j = 0; j < dim; ++j) {
        e[j] = 1.0;
        std::vector<double> col = apply(e);
        e[j] = 0.0;
        for (int i = 0; i < dim; ++i) m(i, j) = col[i];
    }
    return m;
}

/// LU factorization with partial pivoting. The update loop is written
/// row-contiguous so the compiler vectorizes it; that is fast enough for the
/// coarse-level systems this project factors (N up to a few thousand).
struct LuFactor {
    int n = 0;
    std::vector<double> lu;   // row-major, L below diagonal (unit), U on/above
    std::vector<int> piv;

    static LuFactor factor(DenseMatrix m) {
        if (m.rows != m.cols) throw std::invalid_argument("LuFactor: square matrix required");
        LuFactor f;
        f.n = m.rows;
        f.lu = std::move(m.a);
        f.piv.assign(f.n, 0);
        const int n = f.n;
        double* a = f.lu.data();
        for (int k = 0; k < n; ++k) {
            int p = k;
            double mx = std::abs(a[static_cast<size_t>(k) * n + k]);
            for (int i = k + 1; i < n; ++i) {
                double v = std::abs(a[static_cast<size_t>(i) * n + k]);
                if (v > mx) { mx = v; p = i; }
            }
            if (mx == 0.0) throw std::runtime_error("LuFactor: singular matrix");
            f.piv[k] = p;
            if (p != k)
                for (int j = 0; j < n; ++j)
                    std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(p) * n + j]);
            const double inv = 1.0 / a[static_cast<size_t>(k) * n + k];
            const double* rk = a + static_cast<size_t>(k) * n;
            for (int i = k + 1; i < n; ++i) {
                double* ri = a + static_cast<size_t>(i) * n;
                const double mult = ri[k] * inv;
                ri[k] = mult;
                for (int j = k + 1; j < n; ++j) ri[j] -= mult * rk[j];
            }
        }
        return f;
    }

    void solve_inplace(std::vector<double>& b) const {
        const double* a = lu.data();
        for (int k = 0; k < n; ++k)
            if (piv[k] != k) std::swap(b[k], b[piv[k]]);
        for (int i = 1; i < n; ++i) {
            const double* ri = a + static_cast<size_t>(i) * n;
            double s = b[i];
            for (int j = 0; j < i; ++j) s -= ri[j] * b[j];
            b[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            const double* ri = a + static_cast<size_t>(i) * n;
            double s = b[i];
            for (int j = i + 1; j < n; ++j) s -= ri[j] * b[j];
            b[i] = s / ri[i];
        }
    }
};

}  // namespace brinkmg
