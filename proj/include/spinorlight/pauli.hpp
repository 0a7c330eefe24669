#pragma once

// Complex 2x2 algebra over the Pauli basis, plus the closed-form propagator
//
//     exp(i K.sigma z) = cos(Kz) I + i sin(Kz)/K * K.sigma,
//
// where K.sigma = i Kx sx + i Ky sy + Kz sz and K = sqrt(Kz^2 - Kx^2 - Ky^2).
// (K.sigma)^2 = K^2 I, so the exponential closes after one power. Everything
// here is written in terms of cos(Kz) and z*sinc(Kz), which are even in K;
// the propagator therefore never depends on the branch chosen for K.

#include <array>
#include <cmath>
#include <complex>

#include "errors.hpp"

namespace spinorlight {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// sin(z)/z, Taylor-guarded near the origin (relative error < 1e-24 at the
// switch point 1e-6, far below double rounding).
inline cplx sinc(cplx z) {
    if (std::abs(z) < 1e-6) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// sinh(z)/z with the same guard.
inline cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-6) {
        const cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

struct Spinor2 {
    cplx up{0.0, 0.0};
    cplx dn{0.0, 0.0};

    double norm2() const { return std::norm(up) + std::norm(dn); }
};

inline Spinor2 operator+(const Spinor2& a, const Spinor2& b) { return {a.up + b.up, a.dn + b.dn}; }
inline Spinor2 operator-(const Spinor2& a, const Spinor2& b) { return {a.up - b.up, a.dn - b.dn}; }
inline Spinor2 operator*(cplx s, const Spinor2& v) { return {s * v.up, s * v.dn}; }

struct Mat2 {
    // Row-major entries: [[a, b], [c, d]].
    cplx a{0.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{0.0, 0.0};

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }

    Mat2 dagger() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }

    Mat2 inverse() const {
        const cplx dt = det();
        if (std::abs(dt) < 1e-300)
            throw DenominatorVanishes("2x2 inverse: determinant magnitude below 1e-300");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
    static Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }
};

inline Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
inline Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
inline Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
inline Mat2 operator*(const Mat2& m, cplx s) { return s * m; }

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline Spinor2 operator*(const Mat2& m, const Spinor2& v) {
    return {m.a * v.up + m.b * v.dn, m.c * v.up + m.d * v.dn};
}

inline double max_abs(const Mat2& m) {
    return std::max(std::max(std::abs(m.a), std::abs(m.b)),
                    std::max(std::abs(m.c), std::abs(m.d)));
}

// Complex wave vector (i Kx, i Ky, Kz). k_len caches the principal branch of
// sqrt(Kz^2 - Kx^2 - Ky^2); all consumers are even in k_len.
struct KVector {
    cplx kx{0.0, 0.0};
    cplx ky{0.0, 0.0};
    cplx kz{0.0, 0.0};
    cplx k_len{0.0, 0.0};
};

inline KVector make_k_vector(cplx kx, cplx ky, cplx kz) {
    return {kx, ky, kz, std::sqrt(kz * kz - kx * kx - ky * ky)};
}

// K.sigma = i Kx sx + i Ky sy + Kz sz = [[Kz, iKx+Ky], [iKx-Ky, -Kz]].
inline Mat2 pauli_combination(const KVector& k) {
    const cplx i(0.0, 1.0);
    return {k.kz, i * k.kx + k.ky, i * k.kx - k.ky, -k.kz};
}

// exp(i K.sigma z). Unit determinant by construction (traceless generator).
inline Mat2 transfer_matrix(const KVector& k, double z) {
    const cplx i(0.0, 1.0);
    const cplx w = k.k_len * z;
    const cplx c = std::cos(w);
    const cplx s_over_k = z * sinc(w); // sin(Kz)/K, finite and even at K = 0
    const Mat2 ks = pauli_combination(k);
    Mat2 m = i * s_over_k * ks;
    m.a += c;
    m.d += c;
    return m;
}

// exp(M) for an arbitrary 2x2 via the Pauli split M = c0 I + m.sigma:
// exp(M) = e^{c0} (cosh(r) I + sinh(r)/r * m.sigma), r^2 = mx^2+my^2+mz^2.
inline Mat2 exp_mat2(const Mat2& m) {
    const cplx i(0.0, 1.0);
    const cplx c0 = 0.5 * (m.a + m.d);
    const cplx mz = 0.5 * (m.a - m.d);
    const cplx mx = 0.5 * (m.b + m.c);
    const cplx my = 0.5 * i * (m.b - m.c);
    const cplx r = std::sqrt(mx * mx + my * my + mz * mz);
    const cplx e0 = std::exp(c0);
    const cplx ch = e0 * std::cosh(r);
    const cplx sh = e0 * sinhc(r);
    return {ch + sh * mz, sh * (mx - i * my), sh * (mx + i * my), ch - sh * mz};
}

struct EigenPair {
    cplx lambda1, lambda2;
    Spinor2 v1, v2;
};

// Closed-form eigendecomposition. For (near-)scalar matrices any orthonormal
// pair is returned; for a defective matrix the second vector completes an
// orthonormal basis but is not an eigenvector (none exists).
inline EigenPair eigenpairs(const Mat2& m) {
    const cplx tr = m.trace();
    const cplx disc = std::sqrt(tr * tr - 4.0 * m.det());
    cplx l1 = 0.5 * (tr + disc);
    cplx l2 = 0.5 * (tr - disc);
    if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2); // |l1| >= |l2| for stable deflation
    if (std::abs(l1) > 0.0) l2 = m.det() / l1;

    const double scale = max_abs(m) + std::abs(l1);

    auto vector_for = [&](cplx lambda) -> Spinor2 {
        // Rows of (m - lambda I) give two candidate null vectors; keep the
        // better-conditioned one.
        const Spinor2 cand1{m.b, lambda - m.a};
        const Spinor2 cand2{lambda - m.d, m.c};
        const Spinor2 v = cand1.norm2() >= cand2.norm2() ? cand1 : cand2;
        const double n = std::sqrt(v.norm2());
        if (n <= 1e-14 * scale) return {1.0, 0.0}; // m ~ lambda I: anything works
        return (1.0 / n) * v;
    };

    EigenPair out;
    out.lambda1 = l1;
    out.lambda2 = l2;
    out.v1 = vector_for(l1);
    if (std::abs(l1 - l2) <= 1e-14 * scale) {
        // Degenerate: return the orthogonal complement of v1.
        out.v2 = {-std::conj(out.v1.dn), std::conj(out.v1.up)};
    } else {
        out.v2 = vector_for(l2);
    }
    return out;
}

} // namespace spinorlight
