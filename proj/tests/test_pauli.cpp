#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include <spinorlight/pauli.hpp>

#include "oracles.hpp"

namespace sl = spinorlight;
using sl::cplx;
using sl::Mat2;

namespace {

double mat_diff(const Mat2& m, const oracles::M2& o) {
    return std::max(std::max(std::abs(m.a - o[0]), std::abs(m.b - o[1])),
                    std::max(std::abs(m.c - o[2]), std::abs(m.d - o[3])));
}

oracles::M2 as_array(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }

struct Rng {
    std::mt19937 gen{0xfeedbeefu};
    std::uniform_real_distribution<double> uni{-1.0, 1.0};
    double real(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uni(gen) + 1.0); }
    cplx c(double scale = 1.0) { return scale * cplx(uni(gen), uni(gen)); }
    Mat2 mat(double scale = 1.0) { return {c(scale), c(scale), c(scale), c(scale)}; }
};

} // namespace

TEST_CASE("sinc and sinhc match direct evaluation and are smooth at the guard") {
    const cplx z(0.7, -0.3);
    CHECK(std::abs(sl::sinc(z) - std::sin(z) / z) < 1e-15);
    CHECK(std::abs(sl::sinhc(z) - std::sinh(z) / z) < 1e-15);

    CHECK(std::abs(sl::sinc(cplx(1e-9, 0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(sl::sinhc(cplx(0.0, 0.0)) - 1.0) == 0.0);

    const cplx lo(0.9999e-6, 0.2e-6), hi(1.0001e-6, 0.2e-6);
    CHECK(std::abs(sl::sinc(lo) - sl::sinc(hi)) < 1e-15);
    CHECK(std::abs(sl::sinhc(lo) - sl::sinhc(hi)) < 1e-15);
}

TEST_CASE("two by two algebra identities") {
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        const Mat2 x = rng.mat(2.0);
        const Mat2 y = rng.mat(2.0);

        const Mat2 xy = x * y;
        CHECK(std::abs(xy.det() - x.det() * y.det()) < 1e-12);

        const Mat2 lr = x * x.inverse();
        CHECK(sl::max_abs(lr - Mat2::identity()) < 1e-12);

        const Mat2 dag = xy.dagger() - y.dagger() * x.dagger();
        CHECK(sl::max_abs(dag) < 1e-14);
    }

    const Mat2 sx = Mat2::sigma_x(), sy = Mat2::sigma_y(), sz = Mat2::sigma_z();
    const cplx i(0.0, 1.0);
    CHECK(sl::max_abs(sx * sy - i * sz) == 0.0);
    CHECK(sl::max_abs(sx * sx - Mat2::identity()) == 0.0);
    CHECK(sl::max_abs(sy * sy - Mat2::identity()) == 0.0);
    CHECK(sl::max_abs(sz * sz - Mat2::identity()) == 0.0);
}

TEST_CASE("pauli exponential agrees with the raw series") {
    Rng rng;
    for (int trial = 0; trial < 60; ++trial) {
        const double scale = trial < 40 ? 2.0 : 25.0;
        const Mat2 m = rng.mat(scale);
        const oracles::M2 ref = oracles::series_exp(as_array(m));
        const double norm = std::max(1.0, oracles::max_abs(ref));
        CHECK(mat_diff(sl::exp_mat2(m), ref) < 1e-11 * norm);
    }
}

TEST_CASE("pauli exponential handles nilpotent and scalar generators") {
    const Mat2 nil{0.0, 1.0, 0.0, 0.0};
    const Mat2 e_nil = sl::exp_mat2(nil);
    CHECK(sl::max_abs(e_nil - Mat2{1.0, 1.0, 0.0, 1.0}) < 1e-15);

    const Mat2 scalar = cplx(0.3, -0.4) * Mat2::identity();
    const cplx e0 = std::exp(cplx(0.3, -0.4));
    CHECK(sl::max_abs(sl::exp_mat2(scalar) - e0 * Mat2::identity()) < 1e-15);
}

TEST_CASE("anti-hermitian exponentials are unitary") {
    Rng rng;
    for (int trial = 0; trial < 10; ++trial) {
        const Mat2 h_raw = rng.mat(1.5);
        const Mat2 h = 0.5 * (h_raw + h_raw.dagger());
        const cplx i(0.0, 1.0);
        const Mat2 u = sl::exp_mat2(i * h);
        CHECK(sl::max_abs(u * u.dagger() - Mat2::identity()) < 1e-13);
    }
}

TEST_CASE("transfer matrix matches the brute-force exponential") {
    Rng rng;
    for (int trial = 0; trial < 60; ++trial) {
        const cplx kx = rng.c(2.0), ky = rng.c(2.0), kz = rng.c(2.0);
        const double len = rng.real(0.0, 2.5);
        const sl::KVector k = sl::make_k_vector(kx, ky, kz);
        const oracles::M2 ref = oracles::series_exp(oracles::generator(kx, ky, kz, len));
        const double norm = std::max(1.0, oracles::max_abs(ref));
        CHECK(mat_diff(sl::transfer_matrix(k, len), ref) < 1e-11 * norm);
    }
}

TEST_CASE("transfer matrix is branch-free in the wave number") {
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        sl::KVector k = sl::make_k_vector(rng.c(2.0), rng.c(2.0), rng.c(2.0));
        sl::KVector flipped = k;
        flipped.k_len = -flipped.k_len;
        const Mat2 a = sl::transfer_matrix(k, 1.3);
        const Mat2 b = sl::transfer_matrix(flipped, 1.3);
        CHECK(sl::max_abs(a - b) == 0.0);
    }
}

TEST_CASE("transfer matrix has unit determinant") {
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        const sl::KVector k = sl::make_k_vector(rng.c(3.0), rng.c(3.0), rng.c(3.0));
        const Mat2 m = sl::transfer_matrix(k, rng.real(0.0, 2.0));
        const double norm = std::max(1.0, sl::max_abs(m));
        CHECK(std::abs(m.det() - 1.0) < 1e-12 * norm * norm);
    }
}

TEST_CASE("eigenpairs satisfy the eigenvalue equation") {
    Rng rng;
    for (int trial = 0; trial < 30; ++trial) {
        const Mat2 m = rng.mat(2.0);
        const sl::EigenPair ep = sl::eigenpairs(m);
        const double scale = sl::max_abs(m) + std::abs(ep.lambda1);

        const sl::Spinor2 r1 = m * ep.v1 - ep.lambda1 * ep.v1;
        const sl::Spinor2 r2 = m * ep.v2 - ep.lambda2 * ep.v2;
        CHECK(std::sqrt(r1.norm2()) < 1e-12 * scale);
        CHECK(std::sqrt(r2.norm2()) < 1e-12 * scale);

        CHECK(std::abs(ep.lambda1 + ep.lambda2 - m.trace()) < 1e-12 * scale);
        CHECK(std::abs(ep.lambda1 * ep.lambda2 - m.det()) < 1e-12 * scale * scale);
    }

    // Scalar matrix: any orthonormal basis works, both residuals must vanish.
    const Mat2 scalar = cplx(2.0, 1.0) * Mat2::identity();
    const sl::EigenPair ep = sl::eigenpairs(scalar);
    CHECK(std::abs(ep.lambda1 - cplx(2.0, 1.0)) < 1e-14);
    CHECK(std::sqrt((scalar * ep.v1 - ep.lambda1 * ep.v1).norm2()) < 1e-13);
    CHECK(std::sqrt((scalar * ep.v2 - ep.lambda2 * ep.v2).norm2()) < 1e-13);
    const cplx overlap = std::conj(ep.v1.up) * ep.v2.up + std::conj(ep.v1.dn) * ep.v2.dn;
    CHECK(std::abs(overlap) < 1e-13);
}

TEST_CASE("spinor norm accumulates both components") {
    const sl::Spinor2 v{cplx(3.0, 4.0), cplx(0.0, -2.0)};
    CHECK(v.norm2() == 29.0);
}
