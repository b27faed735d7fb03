#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ptgram/models.hpp"
#include "ptgram/pt_structure.hpp"
#include "support/random_matrices.hpp"
#include "support/two_level_oracle.hpp"

using namespace ptgram;
using namespace std::complex_literals;

namespace {

MatrixXc two_level_matrix(double g, double b) {
    MatrixXc h(2, 2);
    h << 1i * g, b, b, -1i * g;
    return h;
}

SignedSystem<double> signed_system(const MatrixXc& h, const ParityOperator<double>& p) {
    const auto sys = biorthonormalize(pair_left_right(h));
    return extract_signature(fix_pt_phase(sys, p), p);
}

// Real symmetric matrix commuting with the grid reversal of size n.
MatrixXc parity_symmetric_real(Eigen::Index n, std::uint64_t seed) {
    const auto p = make_parity(ParityKind::GridReversal, n);
    MatrixXc x = testing_support::random_hermitian(n, seed).real().cast<std::complex<double>>();
    return (x + p.matrix * x * p.matrix) / 2.0;
}

}  // namespace

TEST_CASE("make_parity") {
    SUBCASE("swap pairs, dim 2") {
        const auto p = make_parity(ParityKind::SwapPairs, 2);
        MatrixXc expected(2, 2);
        expected << 0.0, 1.0, 1.0, 0.0;
        CHECK(max_abs(p.matrix - expected) == 0.0);
    }
    SUBCASE("grid reversal, dim 3") {
        const auto p = make_parity(ParityKind::GridReversal, 3);
        CHECK(p.matrix(0, 2) == 1.0);
        CHECK(p.matrix(1, 1) == 1.0);
        CHECK(p.matrix(2, 0) == 1.0);
        CHECK(identity_defect(p.matrix * p.matrix) == 0.0);
        CHECK(max_abs(p.matrix - p.matrix.adjoint()) == 0.0);
        CHECK_FALSE(p.trivial());
    }
    SUBCASE("explicit identity is a valid, trivial parity") {
        const auto p = make_parity(MatrixXc::Identity(2, 2));
        CHECK(p.kind == ParityKind::Explicit);
        CHECK(p.trivial());
    }
    SUBCASE("explicit matrices that are not self-adjoint involutions are rejected") {
        MatrixXc not_involution(2, 2);
        not_involution << 1.0, 1.0, 0.0, 1.0;
        MatrixXc not_hermitian(2, 2);  // squares to I
        not_hermitian << 1.0, 1.0, 0.0, -1.0;
        for (const MatrixXc& m : {not_involution, not_hermitian}) {
            try {
                make_parity(m);
                FAIL("expected InvalidParity");
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::InvalidParity);
            }
        }
    }
}

TEST_CASE("check_pt_symmetry") {
    const auto swap = make_parity(ParityKind::SwapPairs, 2);
    const MatrixXc real_sym = testing_support::random_hermitian(4, 1).real().cast<std::complex<double>>();
    CHECK(check_pt_symmetry(real_sym, make_parity(MatrixXc::Identity(4, 4))) == 0.0);
    CHECK(check_pt_symmetry(two_level_matrix(1, 2), swap) == 0.0);
    MatrixXc violating(2, 2);
    violating << 1.0i, 2.0, 2.0, 1.0i;
    CHECK(check_pt_symmetry(violating, swap) == doctest::Approx(2.0));
}

TEST_CASE("check_pseudo_hermiticity") {
    const MatrixXc herm = testing_support::random_hermitian(4, 9);
    CHECK(check_pseudo_hermiticity(herm, make_parity(MatrixXc::Identity(4, 4))) == 0.0);
    CHECK(check_pseudo_hermiticity(two_level_matrix(1, 2), make_parity(ParityKind::SwapPairs, 2)) == 0.0);

    SUBCASE("non-symmetric PT matrices are generally not P-pseudo-Hermitian") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto p = make_parity(ParityKind::GridReversal, 6);
            const MatrixXc a = testing_support::random_complex(6, seed);
            const MatrixXc h = p.matrix * a.conjugate() * p.matrix + a;
            CHECK(check_pt_symmetry(h, p) == 0.0);
            CHECK(check_pseudo_hermiticity(h, p) > 1e-3);
        }
    }
    SUBCASE("complex-symmetric H: both residuals coincide") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto p = make_parity(ParityKind::GridReversal, 5);
            const MatrixXc a = testing_support::random_complex(5, seed + 50);
            const MatrixXc h = (a + a.transpose()) / 2.0;
            CHECK(std::abs(check_pt_symmetry(h, p) - check_pseudo_hermiticity(h, p)) < 1e-12);
        }
    }
}

TEST_CASE("PT invariance survives H -> P conj(H) P exactly") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto model = random_pt(9, seed);
        const MatrixXc image = model.parity.matrix * model.hamiltonian.conjugate() * model.parity.matrix;
        CHECK(check_pt_symmetry(model.hamiltonian, model.parity) == 0.0);
        CHECK(check_pt_symmetry(image, model.parity) == 0.0);
    }
}

TEST_CASE("classify_spectrum") {
    VectorXc real_pair(2);
    real_pair << -std::sqrt(3.0), std::sqrt(3.0);
    const auto a = classify_spectrum(real_pair);
    CHECK(a.unbroken);
    CHECK(a.real_indices.size() == 2);

    VectorXc conj_pair(2);
    conj_pair << 1i * std::sqrt(3.0), -1i * std::sqrt(3.0);
    const auto b = classify_spectrum(conj_pair);
    CHECK_FALSE(b.unbroken);
    REQUIRE(b.conjugate_pairs.size() == 1);
    CHECK(b.conjugate_pairs[0] == std::pair<Eigen::Index, Eigen::Index>{0, 1});
    CHECK(b.real_indices.empty());

    VectorXc three(3);
    three << 1.0, 2.0, 3.0;
    CHECK(classify_spectrum(three).unbroken);

    VectorXc mixed(4);
    mixed << 0.5, 2.0 - 1.0i, -1.0, 2.0 + 1.0i;
    const auto c = classify_spectrum(mixed);
    CHECK(c.real_indices == std::vector<Eigen::Index>{0, 2});
    REQUIRE(c.conjugate_pairs.size() == 1);
    CHECK(c.conjugate_pairs[0] == std::pair<Eigen::Index, Eigen::Index>{3, 1});

    VectorXc lone(2);
    lone << 1.0, 1.0 + 1.0i;
    try {
        classify_spectrum(lone);
        FAIL("expected UnpairedComplexEigenvalue");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnpairedComplexEigenvalue);
    }
}

TEST_CASE("pt_phase and fix_pt_phase: two-level closed form") {
    const auto swap = make_parity(ParityKind::SwapPairs, 2);
    const double r = std::sqrt(3.0);
    VectorXc upper(2), lower(2);
    upper << 2.0, r - 1.0i;   // E = +sqrt3: factor (sqrt3 + i)/2
    lower << 2.0, -r - 1.0i;  // E = -sqrt3: factor (-sqrt3 + i)/2
    CHECK(pt_phase(upper, swap).alpha == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));
    CHECK(pt_phase(lower, swap).alpha == doctest::Approx(5 * std::numbers::pi / 6).epsilon(1e-14));
    CHECK(pt_phase(upper, swap).defect < 1e-15);

    VectorXc even(2);
    even << 1.0, 1.0;
    CHECK(pt_phase(even, swap).alpha == 0.0);

    const auto fixed = fix_pt_phase(biorthonormalize(pair_left_right(two_level_matrix(1, 2))), swap);
    for (Eigen::Index k = 0; k < 2; ++k) {
        const VectorXc v = fixed.states.col(k);
        CHECK((swap.matrix * v.conjugate() - v).norm() < 1e-14);
    }
    CHECK(identity_defect(fixed.duals.adjoint() * fixed.states) < 1e-12);
}

TEST_CASE("fix_pt_phase: broken phase states are not PT-invariant") {
    const auto swap = make_parity(ParityKind::SwapPairs, 2);
    try {
        fix_pt_phase(biorthonormalize(pair_left_right(two_level_matrix(2, 1))), swap);
        FAIL("expected NotPTInvariant");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPTInvariant);
    }
}

TEST_CASE("extract_signature: two-level model") {
    const auto swap = make_parity(ParityKind::SwapPairs, 2);
    const auto result = signed_system(two_level_matrix(1, 2), swap);
    const auto expected = oracle::two_level(1, 2);
    REQUIRE(result.signature.valid);
    CHECK(result.signature.values(0) == -1);
    CHECK(result.signature.values(1) == 1);
    CHECK(result.signature.values(0) == expected.signature[0]);
    CHECK(result.signature.residuals.maxCoeff() < 1e-12);
    for (Eigen::Index k = 0; k < 2; ++k) {
        const VectorXc v = result.system.states.col(k);
        const std::complex<double> parity_norm = v.dot(swap.matrix * v);
        CHECK(std::abs(parity_norm - double(result.signature.values(k))) < 1e-12);
        CHECK(std::abs(v(0) - expected.states[k][0]) < 1e-12);
        CHECK(std::abs(v(1) - expected.states[k][1]) < 1e-12);
    }
    CHECK(result.system.duality_defect < 1e-12);
}

TEST_CASE("extract_signature: Hermitian parity eigenbasis") {
    MatrixXc h(2, 2);
    h << 0.0, 1.0, 1.0, 0.0;
    const auto result = signed_system(h, make_parity(ParityKind::SwapPairs, 2));
    // E = -1 has the odd state (1, -1), E = +1 the even state (1, 1)
    CHECK(result.signature.values(0) == -1);
    CHECK(result.signature.values(1) == 1);
}

TEST_CASE("extract_signature: vanishing PT norm is undefined") {
    const auto swap = make_parity(ParityKind::SwapPairs, 2);
    BiorthonormalSystem<double> sys;
    sys.eigenvalues = VectorXc::Zero(2);
    sys.states.resize(2, 2);
    sys.states << 1.0, 1.0, 1.0i, -1.0i;
    sys.states /= std::sqrt(2.0);
    sys.duals = sys.states;
    try {
        extract_signature(sys, swap);
        FAIL("expected SignatureUndefined");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SignatureUndefined);
    }
}

TEST_CASE("extract_signature: random unbroken PT, dim 16") {
    const auto model = random_pt(16, 2024, 0.5, true);
    const auto result = signed_system(model.hamiltonian, model.parity);
    CHECK(result.signature.valid);
    CHECK(result.signature.residuals.maxCoeff() < 1e-8);
    CHECK((result.signature.values.array().abs() == 1).all());
}

TEST_CASE("build_charge") {
    SUBCASE("all-positive signature gives the identity") {
        const auto sys = biorthonormalize(pair_left_right(random_pt(6, 3).hamiltonian));
        Signature<double> plus{Eigen::VectorXi::Ones(6), RealVector<double>::Zero(6), true};
        CHECK(identity_defect(build_charge(sys, plus)) < 1e-10);
    }
    SUBCASE("two-level model") {
        const auto swap = make_parity(ParityKind::SwapPairs, 2);
        const auto r = signed_system(two_level_matrix(1, 2), swap);
        const MatrixXc c = build_charge(r.system, r.signature);
        CHECK(identity_defect(c * c) < 1e-12);
        CHECK(max_abs(swap.matrix * c * r.system.states - r.system.duals) < 1e-12);
    }
    SUBCASE("Hermitian H commuting with P: charge equals parity") {
        const MatrixXc h = parity_symmetric_real(7, 21);
        const auto p = make_parity(ParityKind::GridReversal, 7);
        const auto r = signed_system(h, p);
        CHECK(max_abs(build_charge(r.system, r.signature) - p.matrix) < 1e-12);
    }
}

TEST_CASE("charge properties on the random PT ensemble") {
    bool saw_non_self_adjoint = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 20);
        const auto model = random_pt(n, seed, 0.5, true);
        const auto r = signed_system(model.hamiltonian, model.parity);
        const MatrixXc c = build_charge(r.system, r.signature);
        const MatrixXc& h = model.hamiltonian;
        CHECK(identity_defect(c * c) < 1e-8);
        CHECK(max_abs(c * h - h * c) < 1e-8 * std::max(1.0, max_abs(h)));
        CHECK((model.parity.matrix * c * r.system.states - r.system.duals).colwise().norm().maxCoeff() < 1e-8);
        if (r.signature.mixed() && max_abs(c - c.adjoint()) > 1e-6) saw_non_self_adjoint = true;
    }
    CHECK(saw_non_self_adjoint);
}
