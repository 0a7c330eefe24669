#pragma once

// Test-side reference implementations. These deliberately avoid every
// closed-form shortcut used by the library: matrix exponentials are plain
// scaled Taylor series on raw 2x2 arrays, and scattering amplitudes are
// obtained by solving the two-point boundary system on top of that series
// exponential. Any agreement with the library is therefore a real check,
// not the same code path twice.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace oracles {

using cplx = std::complex<double>;

// Row-major 2x2: {a, b, c, d} = [[a, b], [c, d]].
using M2 = std::array<cplx, 4>;

inline M2 mul(const M2& x, const M2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline M2 add(const M2& x, const M2& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

inline M2 scale(const M2& x, cplx s) {
    return {x[0] * s, x[1] * s, x[2] * s, x[3] * s};
}

inline double max_abs(const M2& x) {
    double m = 0.0;
    for (const auto& e : x) m = std::max(m, std::abs(e));
    return m;
}

// exp(m) by scaling and squaring with a long Taylor tail. Slow and dumb on
// purpose.
inline M2 series_exp(M2 m) {
    int squarings = 0;
    while (max_abs(m) > 0.125 && squarings < 80) {
        m = scale(m, 0.5);
        ++squarings;
    }
    M2 sum = {1.0, 0.0, 0.0, 1.0};
    M2 term = {1.0, 0.0, 0.0, 1.0};
    for (int k = 1; k <= 60; ++k) {
        term = scale(mul(term, m), 1.0 / static_cast<double>(k));
        sum = add(sum, term);
        if (max_abs(term) < 1e-22 * max_abs(sum)) break;
    }
    for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
    return sum;
}

// i L (K . sigma) assembled from the component definition, with
// K = (i kx, i ky, kz) contracted against the Pauli vector.
inline M2 generator(cplx kx, cplx ky, cplx kz, double len) {
    const cplx i(0.0, 1.0);
    const M2 ksigma = {kz, i * kx + ky, i * kx - ky, -kz};
    return scale(ksigma, i * len);
}

struct Amplitudes {
    cplx r;
    cplx t;
};

// Transfer matrix M maps (forward, backward) at z=0 to z=L. Unit forward
// input at z=0, no backward input at z=L:
//   (t, 0)^T = M (1, r)^T  =>  r = -M21 / M22,  t = M11 + M12 r.
inline Amplitudes scatter_from_transfer(const M2& m) {
    Amplitudes out;
    out.r = -m[2] / m[3];
    out.t = m[0] + m[1] * out.r;
    return out;
}

inline Amplitudes brute_scatter(cplx kx, cplx ky, cplx kz, double len) {
    return scatter_from_transfer(series_exp(generator(kx, ky, kz, len)));
}

// Dense NxN series exponential for the atomic-line blocks.
template <std::size_t N>
using MN = std::array<cplx, N * N>;

template <std::size_t N>
inline MN<N> mul_n(const MN<N>& x, const MN<N>& y) {
    MN<N> out{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t k = 0; k < N; ++k) {
            const cplx xv = x[r * N + k];
            if (xv == cplx{}) continue;
            for (std::size_t c = 0; c < N; ++c) out[r * N + c] += xv * y[k * N + c];
        }
    return out;
}

template <std::size_t N>
inline double max_abs_n(const MN<N>& x) {
    double m = 0.0;
    for (const auto& e : x) m = std::max(m, std::abs(e));
    return m;
}

template <std::size_t N>
inline MN<N> series_exp_n(MN<N> m) {
    int squarings = 0;
    while (max_abs_n<N>(m) > 0.125 && squarings < 80) {
        for (auto& e : m) e *= 0.5;
        ++squarings;
    }
    MN<N> sum{};
    MN<N> term{};
    for (std::size_t d = 0; d < N; ++d) {
        sum[d * N + d] = 1.0;
        term[d * N + d] = 1.0;
    }
    for (int k = 1; k <= 60; ++k) {
        term = mul_n<N>(term, m);
        for (auto& e : term) e /= static_cast<double>(k);
        for (std::size_t j = 0; j < N * N; ++j) sum[j] += term[j];
        if (max_abs_n<N>(term) < 1e-22 * max_abs_n<N>(sum)) break;
    }
    for (int s = 0; s < squarings; ++s) sum = mul_n<N>(sum, sum);
    return sum;
}

}  // namespace oracles
