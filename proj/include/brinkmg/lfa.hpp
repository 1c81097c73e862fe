#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <vector>

#include "brinkmg/operators.hpp"
#include "brinkmg/vanka.hpp"

namespace brinkmg {

using complexd = std::complex<double>;

/// Fixed-size complex matrix for frequency symbols (N = 3 for one frequency,
/// N = 12 for the four coupled harmonics of the two-grid operator).
template <int N>
struct CMat {
    std::array<complexd, static_cast<size_t>(N) * N> a{};

    complexd& operator()(int i, int j) { return a[static_cast<size_t>(i) * N + j]; }
    complexd operator()(int i, int j) const { return a[static_cast<size_t>(i) * N + j]; }

    static CMat identity() {
        CMat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
};

template <int N>
CMat<N> operator*(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> z;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            const complexd v = x(i, k);
            if (v == complexd(0.0)) continue;
            for (int j = 0; j < N; ++j) z(i, j) += v * y(k, j);
        }
    return z;
}

template <int N>
CMat<N> operator-(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> z;
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k] - y.a[k];
    return z;
}

template <int N>
double frobenius_norm(const CMat<N>& x) {
    double s = 0;
    for (const auto& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

template <int N>
complexd trace(const CMat<N>& x) {
    complexd t = 0;
    for (int i = 0; i < N; ++i) t += x(i, i);
    return t;
}

/// Gauss-Jordan inverse with partial pivoting; symbol matrices are tiny, so
/// no factorization is kept.
template <int N>
CMat<N> inverse(CMat<N> m) {
    CMat<N> inv = CMat<N>::identity();
    for (int k = 0; k < N; ++k) {
        int p = k;
        double mx = std::abs(m(k, k));
        for (int i = k + 1; i < N; ++i)
            if (std::abs(m(i, k)) > mx) { mx = std::abs(m(i, k)); p = i; }
        if (mx == 0.0) throw std::runtime_error("CMat inverse: singular symbol");
        if (p != k)
            for (int j = 0; j < N; ++j) { std::swap(m(k, j), m(p, j)); std::swap(inv(k, j), inv(p, j)); }
        const complexd d = 1.0 / m(k, k);
        for (int j = 0; j < N; ++j) { m(k, j) *= d; inv(k, j) *= d; }
        for (int i = 0; i < N; ++i) {
            if (i == k) continue;
            const complexd f = m(i, k);
            if (f == complexd(0.0)) continue;
            for (int j = 0; j < N; ++j) { m(i, j) -= f * m(k, j); inv(i, j) -= f * inv(k, j); }
        }
    }
    return inv;
}

/// Spectral radius by repeated squaring with norm renormalization,
/// rho = lim ||M^(2^k)||^(1/2^k), iterated until successive estimates agree
/// to 1e-6 (tighter than the 1e-5 the sampled factors need).
template <int N>
double spectral_radius(CMat<N> m) {
    double s = frobenius_norm(m);
    if (s == 0.0 || !std::isfinite(s)) return s == 0.0 ? 0.0 : s;
    for (auto& v : m.a) v /= s;
    double log_acc = std::log(s);
    double pow2 = 1.0;
    double est = std::exp(log_acc);
    for (int k = 0; k < 64; ++k) {
        m = m * m;
        const double ns = frobenius_norm(m);
        if (ns == 0.0) return 0.0;
        for (auto& v : m.a) v /= ns;
        pow2 *= 0.5;
        log_acc += std::log(ns) * pow2;
        const double prev = est;
        est = std::exp(log_acc);
        if (std::abs(est - prev) <= 1e-6) break;
    }
    return est;
}

/// Frequency in the fundamental square [-pi/2, 3pi/2)^2 of standard
/// coarsening; low means both components in [-pi/2, pi/2).
struct Frequency {
    double theta1 = 0, theta2 = 0;
    bool is_low() const {
        const double half = std::numbers::pi / 2;
        return theta1 >= -half && theta1 < half && theta2 >= -half && theta2 < half;
    }
    bool is_high() const { return !is_low(); }
};

/// lambda* as a function of the cosines, the only way the frequencies enter:
/// (a + b c1 + b c2 + c c1 c2)(4 + r - 2 c1 - 2 c2).
inline double lambda_star_cos(double r, double c1, double c2) {
    const VankaCoefficients v = vanka_coefficients(r);
    return (v.a + v.b * c1 + v.b * c2 + v.c * c1 * c2) * (4.0 + r - 2.0 * c1 - 2.0 * c2);
}

/// Third eigenvalue of Msym^-1 Ksym at a frequency (the other two are 1).
inline double lambda_star(double r, const Frequency& th) {
    return lambda_star_cos(r, std::cos(th.theta1), std::cos(th.theta2));
}

/// Closed-form smoothing quantities as functions of r = h^2/eps^2:
/// extreme eigenvalues d1, d2 of the high-frequency relaxation symbol, the
/// optimal damping, the optimal smoothing factor, and the factor at
/// omega = 1.
struct SpectralBounds {
    double r = 0;
    double d1 = 0;         // (8+r)/(6+r), max of lambda* over high frequencies
    double d2 = 0;         // (3+r)/(4+r), min of lambda* over high frequencies
    double omega_opt = 0;  // (2r^2+20r+48)/(2r^2+21r+50)
    double mu_opt = 0;     // (3r+14)/(2r^2+21r+50)
    double mu_omega1 = 0;  // 2/(6+r)
};

inline SpectralBounds spectral_bounds(double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("spectral_bounds: r must be nonnegative");
    SpectralBounds s;
    s.r = r;
    s.d1 = (8.0 + r) / (6.0 + r);
    s.d2 = (3.0 + r) / (4.0 + r);
    const double den = 2.0 * r * r + 21.0 * r + 50.0;
    s.omega_opt = (2.0 * r * r + 20.0 * r + 48.0) / den;
    s.mu_opt = (3.0 * r + 14.0) / den;
    s.mu_omega1 = 2.0 / (6.0 + r);
    return s;
}

/// Symbol of the MAC saddle-point operator at one frequency,
/// (1/h^2) [t 0 i2h s1; 0 t i2h s2; -i2h s1 -i2h s2 0] with
/// t = eps^2 (4 + r - 2 cos t1 - 2 cos t2) and sk = sin(tk/2).
inline CMat<3> symbol_K(const Frequency& th, const OperatorParams& p) {
    const double t = p.eps * p.eps * (4.0 + p.r - 2.0 * std::cos(th.theta1) - 2.0 * std::cos(th.theta2));
    const complexd g1(0.0, 2.0 * p.h * std::sin(th.theta1 / 2.0));
    const complexd g2(0.0, 2.0 * p.h * std::sin(th.theta2 / 2.0));
    CMat<3> k;
    k(0, 0) = t; k(1, 1) = t;
    k(0, 2) = g1; k(1, 2) = g2;
    k(2, 0) = -g1; k(2, 1) = -g2;
    const double inv_h2 = 1.0 / (p.h * p.h);
    for (auto& v : k.a) v *= inv_h2;
    return k;
}

/// Symbol of the element-wise Vanka smoother,
/// (h^2/eps^2)(a + b cos t1 + b cos t2 + c cos t1 cos t2); real and positive.
inline double symbol_Me(const Frequency& th, const OperatorParams& p) {
    const VankaCoefficients v = vanka_coefficients(p.r);
    const double c1 = std::cos(th.theta1), c2 = std::cos(th.theta2);
    return (p.h * p.h / (p.eps * p.eps)) * (v.a + v.b * c1 + v.b * c2 + v.c * c1 * c2);
}

/// Symbol of the Braess-Sarazin smoother: the saddle structure of K with the
/// velocity diagonal replaced by 1/Me~.
inline CMat<3> symbol_M(const Frequency& th, const OperatorParams& p) {
    CMat<3> m = symbol_K(th, p);
    const double t_hat = 1.0 / symbol_Me(th, p);
    m(0, 0) = t_hat;
    m(1, 1) = t_hat;
    return m;
}

/// Relaxation error symbol I - omega Msym^-1 Ksym.
inline CMat<3> symbol_S(const Frequency& th, const OperatorParams& p, double omega) {
    const CMat<3> mk = inverse(symbol_M(th, p)) * symbol_K(th, p);
    CMat<3> s = CMat<3>::identity();
    for (size_t k = 0; k < s.a.size(); ++k) s.a[k] -= omega * mk.a[k];
    return s;
}

/// Smoothing factor max(|1-omega|, |1-omega lambda*|) maximized over a
/// cell-centered grid on the high-frequency region, theta = -pi/2 +
/// pi (i+1/2)/samples per half-period tile (never hits (0,0)).
inline double smoothing_factor_sampled(double omega, const OperatorParams& p, int samples) {
    if (samples < 32)
        throw std::invalid_argument("smoothing_factor_sampled: need >= 32 samples per dimension");
    const double pi = std::numbers::pi;
    std::vector<double> cth(2 * static_cast<size_t>(samples));
    for (int i = 0; i < 2 * samples; ++i)
        cth[i] = std::cos(-pi / 2 + pi * (i + 0.5) / samples);
    double worst = std::abs(1.0 - omega);
    const VankaCoefficients v = vanka_coefficients(p.r);
    for (int i = 0; i < 2 * samples; ++i) {
        for (int j = 0; j < 2 * samples; ++j) {
            if (i < samples && j < samples) continue;  // low-frequency block
            const double c1 = cth[i], c2 = cth[j];
            const double lam = (v.a + v.b * c1 + v.b * c2 + v.c * c1 * c2) *
                               (4.0 + p.r - 2.0 * c1 - 2.0 * c2);
            worst = std::max(worst, std::abs(1.0 - omega * lam));
        }
    }
    return worst;
}

namespace detail {

/// Restriction symbol entries (u, v, p) at one harmonic. The cosine products
/// come from the six-point (velocity) and four-point (pressure) stencils on
/// half-grid offsets; the sign in front carries the parity of the coarse
/// lattice a component lives on, (-1)^beta for u on (even, odd) lines,
/// (-1)^alpha for v, (-1)^(alpha+beta) for p.
inline std::array<complexd, 3> restriction_symbol(const Frequency& th, int alpha, int beta) {
    const double ch1 = std::cos(th.theta1 / 2.0), ch2 = std::cos(th.theta2 / 2.0);
    const double su = (beta & 1) ? -1.0 : 1.0;
    const double sv = (alpha & 1) ? -1.0 : 1.0;
    const double sp = ((alpha + beta) & 1) ? -1.0 : 1.0;
    return {su * ch1 * ch1 * ch2, sv * ch1 * ch2 * ch2, sp * ch1 * ch2};
}

}  // namespace detail

/// Two-grid error symbol S^nu2 (I - P K2h^-1 R K) S^nu1 on the four
/// harmonics of a low frequency; 12x12. Throws if the coarse symbol is
/// singular (the zero-frequency pressure mode), which the cell-centered
/// sampling never hits.
inline CMat<12> twogrid_symbol(const Frequency& th, const OperatorParams& p, double omega,
                               int nu1, int nu2) {
    const double pi = std::numbers::pi;
    const int alpha[4] = {0, 1, 0, 1};
    const int beta[4] = {0, 0, 1, 1};

    const OperatorParams pc = make_operator_params(p.eps, 2.0 * p.h);
    const CMat<3> kc_inv = inverse(symbol_K({2.0 * th.theta1, 2.0 * th.theta2}, pc));

    CMat<12> k_blk, s_blk;
    std::array<std::array<complexd, 3>, 4> r_sym;
    for (int hfreq = 0; hfreq < 4; ++hfreq) {
        const Frequency tha{th.theta1 + pi * alpha[hfreq], th.theta2 + pi * beta[hfreq]};
        const CMat<3> k3 = symbol_K(tha, p);
        const CMat<3> s3 = symbol_S(tha, p, omega);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                k_blk(3 * hfreq + i, 3 * hfreq + j) = k3(i, j);
                s_blk(3 * hfreq + i, 3 * hfreq + j) = s3(i, j);
            }
        r_sym[hfreq] = detail::restriction_symbol(tha, alpha[hfreq], beta[hfreq]);
    }

    // rk = R K (3x12), then t = K2h^-1 rk (3x12)
    complexd rk[3][12], t[3][12];
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 12; ++c) {
            complexd s = 0;
            for (int hfreq = 0; hfreq < 4; ++hfreq) s += r_sym[hfreq][i] * k_blk(3 * hfreq + i, c);
            rk[i][c] = s;
        }
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 12; ++c) {
            complexd s = 0;
            for (int q = 0; q < 3; ++q) s += kc_inv(i, q) * rk[q][c];
            t[i][c] = s;
        }

    // cgc = I - P t with prolongation symbol P = conj(R)^T
    CMat<12> e = CMat<12>::identity();
    for (int hfreq = 0; hfreq < 4; ++hfreq)
        for (int i = 0; i < 3; ++i) {
            const complexd pw = std::conj(r_sym[hfreq][i]);
            for (int c = 0; c < 12; ++c) e(3 * hfreq + i, c) -= pw * t[i][c];
        }

    for (int s = 0; s < nu1; ++s) e = e * s_blk;
    if (nu2 > 0) {
        CMat<12> pre = s_blk;
        for (int s = 1; s < nu2; ++s) pre = pre * s_blk;
        e = pre * e;
    }
    return e;
}

/// Two-grid LFA convergence factors for nu = 1..nu_max (pre-smoothing only),
/// maximizing the spectral radius over a cell-centered sample of the low
/// frequencies. One sweep serves all nu.
inline std::vector<double> twogrid_lfa_factors(const OperatorParams& p, double omega,
                                               int nu_max, int samples) {
    const double pi = std::numbers::pi;
    const int alpha[4] = {0, 1, 0, 1};
    const int beta[4] = {0, 0, 1, 1};
    std::vector<double> worst(static_cast<size_t>(nu_max), 0.0);
    for (int si = 0; si < samples; ++si) {
        for (int sj = 0; sj < samples; ++sj) {
            const Frequency th{-pi / 2 + pi * (si + 0.5) / samples,
                               -pi / 2 + pi * (sj + 0.5) / samples};
            if (std::abs(std::sin(th.theta1)) + std::abs(std::sin(th.theta2)) < 1e-12)
                continue;  // singular coarse pressure mode
            CMat<12> e = twogrid_symbol(th, p, omega, 0, 0);
            CMat<12> s_blk;
            for (int hfreq = 0; hfreq < 4; ++hfreq) {
                const Frequency tha{th.theta1 + pi * alpha[hfreq], th.theta2 + pi * beta[hfreq]};
                const CMat<3> s3 = symbol_S(tha, p, omega);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) s_blk(3 * hfreq + i, 3 * hfreq + j) = s3(i, j);
            }
            for (int nu = 1; nu <= nu_max; ++nu) {
                e = e * s_blk;
                worst[nu - 1] = std::max(worst[nu - 1], spectral_radius(e));
            }
        }
    }
    return worst;
}

/// Single two-grid factor at nu1 pre- and nu2 post-smoothing steps.
inline double twogrid_lfa_factor(const OperatorParams& p, double omega, int nu1, int nu2,
                                 int samples) {
    const double pi = std::numbers::pi;
    double worst = 0.0;
    for (int si = 0; si < samples; ++si)
        for (int sj = 0; sj < samples; ++sj) {
            const Frequency th{-pi / 2 + pi * (si + 0.5) / samples,
                               -pi / 2 + pi * (sj + 0.5) / samples};
            if (std::abs(std::sin(th.theta1)) + std::abs(std::sin(th.theta2)) < 1e-12) continue;
            worst = std::max(worst, spectral_radius(twogrid_symbol(th, p, omega, nu1, nu2)));
        }
    return worst;
}

}  // namespace brinkmg
