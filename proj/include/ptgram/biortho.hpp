#pragma once

// Bi-orthonormal dual pair of eigenbases {|E_n>}, {|E^n>} of a diagonalizable
// matrix H and its adjoint.

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptgram/linalg.hpp"

namespace ptgram {

inline constexpr double kDefaultTolPair = 1e-6;
inline constexpr double kDefaultTolDup = 1e-8;
inline constexpr double kExceptionalConditionThreshold = 1e6;

/// Right/left eigen-triples before normalization. Column n of `right` and
/// `left` belong to `eigenvalues(n)`; `left.col(n)` is an eigenvector of H^dagger
/// with eigenvalue `left_eigenvalues(n)` ~ conj(eigenvalues(n)).
template <typename Real>
struct EigenSystem {
    ComplexVector<Real> eigenvalues;
    ComplexMatrix<Real> right;
    ComplexVector<Real> left_eigenvalues;
    ComplexMatrix<Real> left;
    RealVector<Real> pairing_residuals;

    Eigen::Index dim() const { return eigenvalues.size(); }
};

template <typename Real>
struct BiorthonormalSystem {
    ComplexVector<Real> eigenvalues;
    ComplexMatrix<Real> states;  // columns |E_n>
    ComplexMatrix<Real> duals;   // columns |E^n>, <E^n|E_m> = delta_nm
    Real duality_defect = 0;
    Real completeness_defect = 0;

    Eigen::Index dim() const { return eigenvalues.size(); }
};

template <typename Real>
struct CompletenessDefects {
    Real right_left;  // max_abs(sum_n |E^n><E_n| - I)
    Real left_right;  // max_abs(sum_n |E_n><E^n| - I)
};

template <typename Real>
struct ExceptionalDiagnostics {
    Real eigvec_condition;
    Real min_eigen_gap;

    bool near_exceptional(Real threshold = Real(kExceptionalConditionThreshold)) const {
        return !(eigvec_condition <= threshold);
    }
};

/// Pairs each right eigenpair of H with a left eigenpair (eigenpair of H^dagger)
/// whose eigenvalue is closest to conj(E_n). Greedy on the globally sorted
/// distance list; every left pair is used once.
template <typename Derived>
EigenSystem<typename Derived::RealScalar> pair_left_right(
    const Eigen::MatrixBase<Derived>& h,
    typename Derived::RealScalar tol_pair = typename Derived::RealScalar(kDefaultTolPair),
    typename Derived::RealScalar tol_eig = typename Derived::RealScalar(kDefaultTolEig)) {
    using Real = typename Derived::RealScalar;
    require_square(h, "Hamiltonian");

    const ComplexMatrix<Real> hc = h.template cast<std::complex<Real>>();
    const auto right = eigendecompose(hc, tol_eig);
    const auto left = eigendecompose(ComplexMatrix<Real>(hc.adjoint()), tol_eig);
    const Eigen::Index n = hc.rows();

    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> distance(n, n);
    std::vector<std::tuple<Real, Eigen::Index, Eigen::Index>> candidates;
    candidates.reserve(static_cast<std::size_t>(n * n));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index l = 0; l < n; ++l) {
            distance(r, l) = std::abs(left.values(l) - std::conj(right.values(r)));
            candidates.emplace_back(distance(r, l), r, l);
        }
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<Eigen::Index> match(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    Eigen::Index assigned = 0;
    for (const auto& [d, r, l] : candidates) {
        if (match[static_cast<std::size_t>(r)] >= 0 || used[static_cast<std::size_t>(l)]) continue;
        match[static_cast<std::size_t>(r)] = l;
        used[static_cast<std::size_t>(l)] = true;
        if (++assigned == n) break;
    }

    EigenSystem<Real> sys;
    sys.eigenvalues = right.values;
    sys.right = right.vectors;
    sys.left_eigenvalues.resize(n);
    sys.left.resize(n, n);
    sys.pairing_residuals.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index l = match[static_cast<std::size_t>(r)];
        const Real best = distance(r, l);
        if (!(best <= tol_pair)) {
            throw Error(ErrorKind::AmbiguousPairing,
                        "no adjoint eigenvalue within tolerance of conj(E_" + std::to_string(r) + ")");
        }
        // A competing candidate that is not degenerate with the chosen one but
        // lies just as close makes the assignment arbitrary.
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == l) continue;
            const bool same_cluster = std::abs(left.values(k) - left.values(l)) <= tol_pair;
            if (!same_cluster && distance(r, k) - best <= tol_pair) {
                throw Error(ErrorKind::AmbiguousPairing,
                            "two non-degenerate adjoint eigenvalues compete for E_" + std::to_string(r));
            }
        }
        sys.left_eigenvalues(r) = left.values(l);
        sys.left.col(r) = left.vectors.col(l);
        sys.pairing_residuals(r) = best;
    }
    return sys;
}

/// Groups indices whose eigenvalues lie closer than tol_dup (transitively).
template <typename Derived>
std::vector<std::vector<Eigen::Index>> eigenvalue_clusters(const Eigen::MatrixBase<Derived>& values,
                                                           typename Derived::RealScalar tol_dup) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    auto find = [&](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        }
        return i;
    };
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            if (std::abs(values(a) - values(b)) < tol_dup) parent[static_cast<std::size_t>(find(b))] = find(a);
        }
    }
    std::vector<std::vector<Eigen::Index>> clusters;
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index root = find(i);
        auto& s = slot[static_cast<std::size_t>(root)];
        if (s < 0) {
            s = static_cast<Eigen::Index>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<std::size_t>(s)].push_back(i);
    }
    return clusters;
}

template <typename Real>
CompletenessDefects<Real> check_completeness(const BiorthonormalSystem<Real>& sys) {
    return {identity_defect(sys.duals * sys.states.adjoint()),
            identity_defect(sys.states * sys.duals.adjoint())};
}

/// Rescales (and inside degenerate clusters recombines) the left vectors so
/// that <E^n|E_m> = delta_nm. States keep unit 2-norm; duals carry the scale.
/// Throws DefectiveMatrix when a cluster overlap block is numerically singular.
template <typename Real>
BiorthonormalSystem<Real> biorthonormalize(const EigenSystem<Real>& sys,
                                           Real tol_dup = Real(kDefaultTolDup)) {
    const Eigen::Index n = sys.dim();
    if (n < 1 || sys.right.cols() != n || sys.left.cols() != n) {
        throw Error(ErrorKind::InvalidInput, "eigen system is inconsistent");
    }
    const Real defect_threshold = std::sqrt(std::numeric_limits<Real>::epsilon());

    // Canonical order makes the result independent of the triples' input order.
    const auto order = spectral_order(sys.eigenvalues);
    BiorthonormalSystem<Real> out;
    out.eigenvalues.resize(n);
    out.states.resize(sys.right.rows(), n);
    ComplexMatrix<Real> left(sys.left.rows(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = sys.eigenvalues(src);
        out.states.col(k) = sys.right.col(src).normalized();
        left.col(k) = sys.left.col(src).normalized();
    }
    out.duals.resize(left.rows(), n);

    for (const auto& cluster : eigenvalue_clusters(out.eigenvalues, tol_dup)) {
        const auto m = static_cast<Eigen::Index>(cluster.size());
        ComplexMatrix<Real> v(out.states.rows(), m);
        ComplexMatrix<Real> u(left.rows(), m);
        for (Eigen::Index j = 0; j < m; ++j) {
            v.col(j) = out.states.col(cluster[static_cast<std::size_t>(j)]);
            u.col(j) = left.col(cluster[static_cast<std::size_t>(j)]);
        }
        const ComplexMatrix<Real> overlap = u.adjoint() * v;
        Eigen::JacobiSVD<ComplexMatrix<Real>> svd(overlap);
        if (!(svd.singularValues()(m - 1) > defect_threshold)) {
            throw Error(ErrorKind::DefectiveMatrix,
                        "left/right overlap block is numerically singular near E = " +
                            std::to_string(double(out.eigenvalues(cluster.front()).real())) + " + " +
                            std::to_string(double(out.eigenvalues(cluster.front()).imag())) + "i");
        }
        // D = U X with D^H V = I  =>  X = overlap^{-H}.
        const ComplexMatrix<Real> d = u * inverse(ComplexMatrix<Real>(overlap.adjoint()));
        for (Eigen::Index j = 0; j < m; ++j) out.duals.col(cluster[static_cast<std::size_t>(j)]) = d.col(j);
    }

    out.duality_defect = identity_defect(out.duals.adjoint() * out.states);
    const auto completeness = check_completeness(out);
    out.completeness_defect = std::max(completeness.right_left, completeness.left_right);
    return out;
}

/// Eigenvector-matrix condition number and smallest pairwise eigenvalue distance.
template <typename Real>
ExceptionalDiagnostics<Real> diagnose_exceptional(const EigenSystem<Real>& sys) {
    const Eigen::Index n = sys.dim();
    ComplexMatrix<Real> v = sys.right;
    for (Eigen::Index k = 0; k < n; ++k) v.col(k).normalize();
    Real gap = std::numeric_limits<Real>::infinity();
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) gap = std::min(gap, std::abs(sys.eigenvalues(a) - sys.eigenvalues(b)));
    }
    return {condition_number(v), gap};
}

/// sum_n E_n |E_n><E^n|
template <typename Real>
ComplexMatrix<Real> reconstruct(const BiorthonormalSystem<Real>& sys) {
    return sys.states * sys.eigenvalues.asDiagonal() * sys.duals.adjoint();
}

}  // namespace ptgram
