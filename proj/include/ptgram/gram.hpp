#pragma once

// Gram matrix G_mn = <E_m|E_n> of a PT-symmetric eigenbasis and the two routes
// to the dual basis: by inverting G, or by the sign flip G^{-1} = S G S with
// S = diag(s).

#include <algorithm>
#include <optional>
#include <string>

#include "ptgram/biortho.hpp"
#include "ptgram/linalg.hpp"
#include "ptgram/pt_structure.hpp"

namespace ptgram {

inline constexpr double kGramHermiticityTolerance = 1e-12;
inline constexpr double kGramDefiniteness = 1e-12;

enum class InverseRoute { Inversion, Signature };

template <typename Real>
struct GramPair {
    ComplexMatrix<Real> gram;
    std::optional<ComplexMatrix<Real>> inverse;
    std::optional<InverseRoute> route;
    std::optional<Signature<Real>> signature_used;
    Real min_eigenvalue = 0;
    Real max_eigenvalue = 0;
};

/// Largest column-wise 2-norm distance between two bases.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar max_column_distance(const Eigen::MatrixBase<DerivedA>& a,
                                                  const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::InvalidInput, "bases have different shapes");
    }
    return (a - b).colwise().norm().maxCoeff();
}

/// G = V^dagger V for the states V; validates Hermiticity and positive definiteness.
template <typename Real>
GramPair<Real> gram_matrix(const BiorthonormalSystem<Real>& sys) {
    GramPair<Real> out;
    out.gram = sys.states.adjoint() * sys.states;
    const Real scale = std::max(Real(1), max_abs(out.gram));
    const Real asymmetry = max_abs(out.gram - out.gram.adjoint());
    if (!(asymmetry <= Real(kGramHermiticityTolerance) * scale)) {
        throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> eig(out.gram, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    out.max_eigenvalue = eig.eigenvalues().maxCoeff();
    if (!(out.min_eigenvalue > Real(kGramDefiniteness) * out.max_eigenvalue)) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "smallest Gram eigenvalue " + std::to_string(double(out.min_eigenvalue)) +
                        " (states are numerically linearly dependent)");
    }
    return out;
}

/// Matrix of dual overlaps <E^m|E^n>, which equals G^{-1}.
template <typename Real>
ComplexMatrix<Real> dual_gram(const BiorthonormalSystem<Real>& sys) {
    return sys.duals.adjoint() * sys.duals;
}

/// (S G S)_kl = s_k G_kl s_l. Entrywise sign flip, no factorization.
template <typename Derived, typename Real>
auto inverse_via_signature(const Eigen::MatrixBase<Derived>& g, const Signature<Real>& s) {
    if (g.rows() != s.size() || g.cols() != s.size()) {
        throw Error(ErrorKind::InvalidInput, "signature length does not match Gram matrix");
    }
    const ComplexVector<Real> d = s.diagonal();
    return ComplexMatrix<Real>(d.asDiagonal() * g * d.asDiagonal());
}

template <typename Real>
struct TheoremResiduals {
    Real product;   // max_abs(S G S G - I)
    Real diagonal;  // max_n |G_nn - (G^{-1})_nn|, G^{-1} from an LU solve
};

template <typename Derived, typename Real>
TheoremResiduals<Real> verify_signature_theorem(const Eigen::MatrixBase<Derived>& g, const Signature<Real>& s) {
    const ComplexMatrix<Real> gc = g;
    const ComplexMatrix<Real> flipped = inverse_via_signature(gc, s);
    const ComplexMatrix<Real> solved = inverse(gc);
    return {identity_defect(flipped * gc), (gc.diagonal() - solved.diagonal()).cwiseAbs().maxCoeff()};
}

/// |E^n> = sum_m (G^{-1})_mn |E_m>, with G^{-1} from solve(G, I).
template <typename DerivedV, typename DerivedG>
ComplexMatrix<typename DerivedV::RealScalar> dual_via_inversion(const Eigen::MatrixBase<DerivedV>& states,
                                                                const Eigen::MatrixBase<DerivedG>& g) {
    return states * inverse(g);
}

/// |E^n> = s_n sum_m s_m G_mn |E_m>. No inversion.
template <typename DerivedV, typename DerivedG, typename Real>
ComplexMatrix<Real> dual_via_signature(const Eigen::MatrixBase<DerivedV>& states,
                                       const Eigen::MatrixBase<DerivedG>& g, const Signature<Real>& s) {
    return states * inverse_via_signature(g, s);
}

/// max_abs(sum_n s_n |E_n><E_n| P - I)
template <typename Real>
Real check_unconventional_completeness(const BiorthonormalSystem<Real>& sys, const Signature<Real>& s,
                                       const ParityOperator<Real>& p) {
    return identity_defect(sys.states * s.diagonal().asDiagonal() * sys.states.adjoint() * p.matrix);
}

/// With N_nm = |E_n>^T |E_m> (no conjugation), returns max_abs(diag(s) N - I).
template <typename Real>
Real check_indefinite_norms(const BiorthonormalSystem<Real>& sys, const Signature<Real>& s) {
    const ComplexMatrix<Real> norms = sys.states.transpose() * sys.states;
    return identity_defect(s.diagonal().asDiagonal() * norms);
}

}  // namespace ptgram
