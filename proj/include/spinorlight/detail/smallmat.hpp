#pragma once

// Tiny fixed-size dense complex matrices. Only what the local propagators
// need: multiply, matrix-vector apply, and a scaling-and-squaring Taylor
// exponential. N stays single digit, so no pivoting or blocking games.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace spinorlight::detail {

template <std::size_t N>
struct CMat {
    std::array<std::complex<double>, N * N> a{};

    std::complex<double>& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
};

template <std::size_t N>
CMat<N> operator*(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> out;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t k = 0; k < N; ++k) {
            const std::complex<double> xrk = x(r, k);
            for (std::size_t c = 0; c < N; ++c) out(r, c) += xrk * y(k, c);
        }
    return out;
}

template <std::size_t N>
void apply(const CMat<N>& m, const std::complex<double>* in, std::complex<double>* out) {
    for (std::size_t r = 0; r < N; ++r) {
        std::complex<double> acc = 0.0;
        for (std::size_t c = 0; c < N; ++c) acc += m.a[r * N + c] * in[c];
        out[r] = acc;
    }
}

template <std::size_t N>
double norm_inf(const CMat<N>& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < N; ++c) row += std::abs(m(r, c));
        best = std::max(best, row);
    }
    return best;
}

// exp(m) by scaling-and-squaring with a Taylor series on the scaled matrix.
// The series runs until terms stop changing the sum in double precision.
template <std::size_t N>
CMat<N> expm(CMat<N> m) {
    int squarings = 0;
    double nrm = norm_inf(m);
    while (nrm > 0.25) {
        for (auto& v : m.a) v *= 0.5;
        nrm *= 0.5;
        ++squarings;
    }

    CMat<N> sum = CMat<N>::identity();
    CMat<N> term = CMat<N>::identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * m;
        for (auto& v : term.a) v /= double(k);
        for (std::size_t i = 0; i < N * N; ++i) sum.a[i] += term.a[i];
        if (norm_inf(term) < 1e-20 * norm_inf(sum)) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

} // namespace spinorlight::detail
