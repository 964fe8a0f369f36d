#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/rng.hpp"

using namespace jsr;

namespace {

// independent root-finding oracle: Durand-Kerner on the monic polynomial
// t^n + c[0] t^{n-1} + ... + c[n-1]
std::vector<std::complex<double>> durand_kerner(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 1.0;
        for (double coeff : c) v = v * z + coeff;
        return v;
    };
    std::vector<std::complex<double>> r(static_cast<size_t>(n));
    const std::complex<double> base(0.4, 0.9);
    std::complex<double> p = 1.0;
    for (int i = 0; i < n; ++i) {
        p *= base;
        r[i] = p;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= r[i] - r[j];
            const std::complex<double> step = eval(r[i]) / den;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return r;
}

double max_modulus(const std::vector<std::complex<double>>& zs) {
    double m = 0.0;
    for (const auto& z : zs) m = std::max(m, std::abs(z));
    return m;
}

Matrix random_matrix(Rng& rng, int d, double scale = 1.0) {
    Matrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = rng.uniform(-scale, scale);
    return m;
}

}  // namespace

TEST_CASE("lu solve and inverse round-trip") {
    Rng rng(7);
    for (int d = 1; d <= 6; ++d) {
        const Matrix a = random_matrix(rng, d) + 2.0 * Matrix::identity(d);
        const Matrix inv = inverse(a);
        CHECK(approx_equal(a * inv, Matrix::identity(d), 1e-10));
    }
}

TEST_CASE("determinant matches cofactor expansion on 3x3") {
    const Matrix a{{2, -1, 3}, {0, 4, 1}, {-2, 5, 2}};
    // expansion along the first row, by hand
    const double expect = 2 * (4 * 2 - 1 * 5) - (-1) * (0 * 2 - 1 * (-2)) + 3 * (0 * 5 - 4 * (-2));
    CHECK(determinant(a) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("eigenvalues agree with the Durand-Kerner oracle") {
    Rng rng(13);
    for (int d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 60; ++rep) {
            const Matrix a = random_matrix(rng, d, 2.0);
            const auto got = eigenvalues(a);
            const double s = std::max(a.max_abs(), 1e-12);
            Matrix b = (1.0 / s) * a;
            const auto oracle = durand_kerner(characteristic_polynomial(b));
            CHECK(max_modulus(got) ==
                  doctest::Approx(s * max_modulus(oracle)).epsilon(1e-8));
        }
    }
}

TEST_CASE("eigenvalues via QR for d in 5..8 match the char-poly oracle") {
    Rng rng(29);
    for (int d = 5; d <= 8; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            const Matrix a = random_matrix(rng, d);
            const auto got = eigenvalues(a);
            const double s = std::max(a.max_abs(), 1e-12);
            const auto oracle = durand_kerner(characteristic_polynomial((1.0 / s) * a));
            CHECK(max_modulus(got) ==
                  doctest::Approx(s * max_modulus(oracle)).epsilon(1e-7));
        }
    }
}

TEST_CASE("symmetric eigen reconstructs and orders") {
    Rng rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 2 + static_cast<int>(rng.below(5));
        Matrix a = random_matrix(rng, d);
        a = 0.5 * (a + a.transposed());
        const SymmetricEigen e = symmetric_eigen(a);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        Matrix rebuilt(d);
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    rebuilt(i, j) += e.values[k] * e.vectors(i, k) * e.vectors(j, k);
        CHECK(approx_equal(rebuilt, a, 1e-9));
    }
}

TEST_CASE("spectral norm 2x2 closed form matches the power-iteration oracle") {
    Rng rng(101);
    for (int rep = 0; rep < 40; ++rep) {
        const Matrix a = random_matrix(rng, 2, 3.0);
        // power iteration on A^T A
        const Matrix ata = a.transposed() * a;
        Vec x = {1.0, 0.7};
        for (int i = 0; i < 300; ++i) x = scaled(ata * x, 1.0 / std::max(norm_2(ata * x), 1e-300));
        const double lam = dot(x, ata * x) / dot(x, x);
        CHECK(spectral_norm(a) == doctest::Approx(std::sqrt(std::max(lam, 0.0))).epsilon(1e-7));
    }
}

TEST_CASE("symmetric sqrt squares back") {
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 2 + static_cast<int>(rng.below(3));
        Matrix a = random_matrix(rng, d);
        a = a * a.transposed() + 0.5 * Matrix::identity(d);
        const Matrix r = symmetric_sqrt(a);
        CHECK(approx_equal(r * r, a, 1e-9));
    }
}

TEST_CASE("householder basis is orthogonal with prescribed first column") {
    Rng rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 2 + static_cast<int>(rng.below(4));
        const Vec x = rng.gaussian_vector(d);
        const Matrix h = householder_basis(x);
        CHECK(approx_equal(h * h.transposed(), Matrix::identity(d), 1e-11));
        const Vec unit = scaled(x, 1.0 / norm_2(x));
        CHECK(approx_equal(h.col(0), unit, 1e-11));
    }
}

TEST_CASE("null vector of a rank-deficient matrix") {
    const Matrix a{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};  // row2 = 2*row1
    const Vec v = null_vector(a, 1e-9);
    CHECK(norm_2(v) == doctest::Approx(1.0));
    CHECK(norm_inf(a * v) < 1e-9);
    CHECK_THROWS_AS(null_vector(Matrix::identity(3), 1e-9), NumericalFailureError);
}

TEST_CASE("rank and basis extension") {
    const std::vector<Vec> two = {{1, 0, 0}, {1, 1, 0}};
    CHECK(rank_of(two, 3) == 2);
    const auto basis = extend_to_basis(orthonormal_span(two, 3), 3);
    CHECK(basis.size() == 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j) CHECK(std::abs(dot(basis[i], basis[j])) < 1e-10);
}
