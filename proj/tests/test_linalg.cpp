#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "ptgram/linalg.hpp"
#include "support/random_matrices.hpp"

using namespace ptgram;
using namespace std::complex_literals;

TEST_CASE("eigendecompose: identity") {
    const auto eig = eigendecompose(MatrixXc::Identity(3, 3));
    for (Eigen::Index k = 0; k < 3; ++k) CHECK(std::abs(eig.values(k) - 1.0) < 1e-14);
}

TEST_CASE("eigendecompose: diagonal sorted by (Re, Im)") {
    MatrixXc m = MatrixXc::Zero(3, 3);
    m.diagonal() << 1.0, 2.0i, -3.0;
    const auto eig = eigendecompose(m);
    CHECK(std::abs(eig.values(0) - (-3.0)) < 1e-14);
    CHECK(std::abs(eig.values(1) - 2.0i) < 1e-14);
    CHECK(std::abs(eig.values(2) - 1.0) < 1e-14);
    // standard basis vectors up to phase: e_2, e_1, e_0
    CHECK(std::abs(std::abs(eig.vectors(2, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(eig.vectors(1, 1)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(eig.vectors(0, 2)) - 1.0) < 1e-14);
}

TEST_CASE("eigendecompose: PT two-level closed form") {
    MatrixXc h(2, 2);
    h << 1.0i, 2.0, 2.0, -1.0i;
    const auto eig = eigendecompose(h);
    // lambda^2 = b^2 - g^2 = 3
    CHECK(std::abs(eig.values(0) + std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(eig.values(1) - std::sqrt(3.0)) < 1e-12);
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(std::abs(eig.vectors.col(k).norm() - 1.0) < 1e-14);
}

TEST_CASE("eigendecompose: rejects bad input") {
    CHECK_THROWS_AS(eigendecompose(MatrixXc::Zero(2, 3)), Error);
    MatrixXc m = MatrixXc::Identity(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        eigendecompose(m);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

TEST_CASE("eigendecompose: residual contract over 1000 random matrices") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 32);
        const MatrixXc m = testing_support::random_complex(n, seed);
        const auto eig = eigendecompose(m);
        REQUIRE(eig.values.size() == n);
        const double scale = m.norm();
        for (Eigen::Index k = 0; k < n; ++k) {
            const VectorXc v = eig.vectors.col(k);
            CHECK(std::abs(v.norm() - 1.0) < 1e-12);
            CHECK((m * v - eig.values(k) * v).norm() <= kDefaultTolEig * scale);
            if (k > 0) CHECK_FALSE(spectral_less(eig.values(k), eig.values(k - 1)));
        }
    }
}

TEST_CASE("eigendecompose: Hermitian input gives real spectrum and orthogonal vectors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const MatrixXc m = testing_support::random_hermitian(12, seed + 77);
        const auto eig = eigendecompose(m);
        CHECK(eig.values.imag().cwiseAbs().maxCoeff() <= kDefaultTolEig * m.norm());
        CHECK(identity_defect(eig.vectors.adjoint() * eig.vectors) < 10 * kDefaultTolEig);
    }
}

TEST_CASE("eigendecompose: templated on the real scalar") {
    Eigen::MatrixXcf m(2, 2);
    m << std::complex<float>(0, 1), 2.0f, 2.0f, std::complex<float>(0, -1);
    const auto eig = eigendecompose(m, 1e-5f);
    CHECK(std::abs(eig.values(1) - std::sqrt(3.0f)) < 1e-5f);
}

TEST_CASE("solve: closed-form cases") {
    SUBCASE("identity coefficient returns B") {
        const MatrixXc b = testing_support::random_complex(3, 5);
        CHECK(max_abs(solve(MatrixXc::Identity(3, 3), b) - b) < 1e-15);
    }
    SUBCASE("diagonal inverse") {
        MatrixXc a = MatrixXc::Zero(2, 2);
        a.diagonal() << 2.0, 4.0;
        const MatrixXc x = solve(a, MatrixXc::Identity(2, 2));
        CHECK(std::abs(x(0, 0) - 0.5) < 1e-15);
        CHECK(std::abs(x(1, 1) - 0.25) < 1e-15);
        CHECK(std::abs(x(0, 1)) < 1e-15);
    }
    SUBCASE("unit-determinant 2x2") {
        const double r = std::sqrt(3.0);
        MatrixXc a(2, 2);
        a << 2 / r, 1 / r, 1 / r, 2 / r;
        MatrixXc expected(2, 2);
        expected << 2 / r, -1 / r, -1 / r, 2 / r;
        CHECK(max_abs(solve(a, MatrixXc::Identity(2, 2)) - expected) < 1e-14);
    }
}

TEST_CASE("solve: singular and mismatched input") {
    MatrixXc a(2, 2);
    a << 1.0, 2.0, 2.0, 4.0;
    try {
        solve(a, MatrixXc::Identity(2, 2));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularMatrix);
    }
    CHECK_THROWS_AS(solve(MatrixXc::Identity(2, 2), MatrixXc::Identity(3, 3)), Error);
}

TEST_CASE("solve: A solve(A, I) reproduces I") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 40);
        const MatrixXc a = testing_support::random_complex(n, seed + 1000);
        const MatrixXc x = solve(a, MatrixXc::Identity(n, n));
        CHECK((a * x - MatrixXc::Identity(n, n)).norm() <= kDefaultTolSolve * a.norm() * x.norm());
        CHECK(identity_defect(a * x) < 1e-10);
    }
}

TEST_CASE("norms") {
    CHECK(norms(MatrixXc::Zero(3, 3)).frobenius == 0.0);
    CHECK(norms(MatrixXc::Zero(3, 3)).max_abs == 0.0);
    const auto id = norms(MatrixXc::Identity(5, 5));
    CHECK(id.frobenius == doctest::Approx(std::sqrt(5.0)));
    CHECK(id.max_abs == 1.0);
    MatrixXc row(1, 2);
    row << 3.0, 4.0i;
    CHECK(norms(row).frobenius == doctest::Approx(5.0));
    CHECK(norms(row).max_abs == doctest::Approx(4.0));
}
