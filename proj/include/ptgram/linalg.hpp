#pragma once

// Dense complex linear algebra substrate. Everything is templated on the real
// scalar type; the complex scalar is std::complex<Real>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptgram/error.hpp"

namespace ptgram {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXc = ComplexMatrix<double>;
using VectorXc = ComplexVector<double>;

inline constexpr double kDefaultTolEig = 1e-10;
inline constexpr double kDefaultTolSolve = 1e-12;

template <typename Derived>
void require_valid(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw Error(ErrorKind::InvalidInput, std::string(what) + " must have at least one row and column");
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
    }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
    require_valid(m, what);
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::InvalidInput,
                    std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    }
}

/// Entrywise max modulus.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0;
    return m.cwiseAbs().maxCoeff();
}

/// max_abs(M - I) for a square M.
template <typename Derived>
typename Derived::RealScalar identity_defect(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    return max_abs(m - Plain::Identity(m.rows(), m.cols()));
}

template <typename Real>
struct MatrixNorms {
    Real frobenius;
    Real max_abs;
};

template <typename Derived>
MatrixNorms<typename Derived::RealScalar> norms(const Eigen::MatrixBase<Derived>& m) {
    return {m.norm(), max_abs(m)};
}

/// Lexicographic (Re, Im) ordering used for every spectrum in the library.
template <typename Real>
bool spectral_less(const std::complex<Real>& a, const std::complex<Real>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

/// Indices that sort `values` by spectral_less (stable).
template <typename Derived>
std::vector<Eigen::Index> spectral_order(const Eigen::MatrixBase<Derived>& values) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return spectral_less(values(a), values(b));
    });
    return order;
}

template <typename Real>
struct EigenDecomposition {
    ComplexVector<Real> values;   // sorted by (Re, Im)
    ComplexMatrix<Real> vectors;  // column k pairs with values(k), unit 2-norm
};

/// Right eigenpairs of a square complex matrix. Each pair satisfies
/// ||M v - lambda v|| <= tol_eig * ||M||_F; otherwise NonConvergence.
template <typename Derived>
EigenDecomposition<typename Derived::RealScalar> eigendecompose(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::RealScalar tol_eig = typename Derived::RealScalar(kDefaultTolEig)) {
    using Real = typename Derived::RealScalar;
    using Matrix = ComplexMatrix<Real>;
    require_square(m, "eigendecompose input");

    const Matrix a = m.template cast<std::complex<Real>>();
    Eigen::ComplexEigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonConvergence, "complex Schur iteration did not converge");
    }

    const auto order = spectral_order(solver.eigenvalues());
    const Eigen::Index n = a.rows();
    EigenDecomposition<Real> out{ComplexVector<Real>(n), Matrix(n, n)};
    const Real scale = a.norm();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = solver.eigenvalues()(src);
        ComplexVector<Real> v = solver.eigenvectors().col(src);
        const Real len = v.norm();
        if (!(len > Real(0))) {
            throw Error(ErrorKind::NonConvergence, "zero eigenvector returned");
        }
        v /= len;
        const Real residual = (a * v - out.values(k) * v).norm();
        if (!(residual <= tol_eig * scale)) {
            throw Error(ErrorKind::NonConvergence,
                        "eigenpair residual " + std::to_string(double(residual)) + " exceeds tolerance");
        }
        out.vectors.col(k) = v;
    }
    return out;
}

/// Solves A X = B by partially pivoted LU. Throws SingularMatrix when a pivot
/// falls below n * epsilon relative to the largest pivot.
template <typename DerivedA, typename DerivedB>
ComplexMatrix<typename DerivedA::RealScalar> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                   const Eigen::MatrixBase<DerivedB>& b) {
    using Real = typename DerivedA::RealScalar;
    using Matrix = ComplexMatrix<Real>;
    require_square(a, "solve coefficient matrix");
    require_valid(b, "solve right-hand side");
    if (b.rows() != a.rows()) {
        throw Error(ErrorKind::InvalidInput, "solve: right-hand side row count does not match");
    }

    Eigen::PartialPivLU<Matrix> lu(a.template cast<std::complex<Real>>());
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const Real largest = pivots.maxCoeff();
    const Real threshold = Real(a.rows()) * std::numeric_limits<Real>::epsilon() * largest;
    if (!(largest > Real(0)) || pivots.minCoeff() <= threshold) {
        throw Error(ErrorKind::SingularMatrix, "pivot below threshold in LU factorization");
    }
    return lu.solve(b.template cast<std::complex<Real>>());
}

/// Inverse via solve(A, I).
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Matrix = ComplexMatrix<typename Derived::RealScalar>;
    return solve(a, Matrix::Identity(a.rows(), a.cols()));
}

/// 2-norm condition number sigma_max / sigma_min.
template <typename Derived>
typename Derived::RealScalar condition_number(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    Eigen::JacobiSVD<ComplexMatrix<Real>> svd(m.template cast<std::complex<Real>>());
    const auto& sv = svd.singularValues();
    const Real smallest = sv(sv.size() - 1);
    if (smallest <= Real(0)) return std::numeric_limits<Real>::infinity();
    return sv(0) / smallest;
}

}  // namespace ptgram
