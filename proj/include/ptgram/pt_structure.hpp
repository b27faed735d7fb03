#pragma once

// PT-specific structure: parity, the antilinear time reversal (entrywise
// complex conjugation in the working basis), phase fixing, the signature s and
// the charge operator C_s = sum_m s_m |E_m><E^m|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptgram/biortho.hpp"
#include "ptgram/linalg.hpp"

namespace ptgram {

inline constexpr double kDefaultTolSig = 1e-8;
inline constexpr double kDefaultTolReal = 1e-8;
inline constexpr double kParityTolerance = 1e-12;

enum class ParityKind { GridReversal, SwapPairs, Explicit };

constexpr std::string_view to_string(ParityKind kind) noexcept {
    switch (kind) {
        case ParityKind::GridReversal: return "grid-reversal";
        case ParityKind::SwapPairs: return "swap-pairs";
        case ParityKind::Explicit: return "explicit";
    }
    return "unknown";
}

template <typename Real>
struct ParityOperator {
    ComplexMatrix<Real> matrix;
    ParityKind kind = ParityKind::Explicit;

    Eigen::Index dim() const { return matrix.rows(); }
    bool trivial() const { return identity_defect(matrix) == Real(0); }
};

/// Permutation parity of the given kind. Grid reversal maps site i to
/// dim-1-i; swap-pairs exchanges (0,1), (2,3), ... and fixes a trailing odd site.
template <typename Real = double>
ParityOperator<Real> make_parity(ParityKind kind, Eigen::Index dim) {
    if (dim < 1) throw Error(ErrorKind::InvalidParity, "parity dimension must be >= 1");
    ParityOperator<Real> p{ComplexMatrix<Real>::Zero(dim, dim), kind};
    switch (kind) {
        case ParityKind::GridReversal:
            for (Eigen::Index i = 0; i < dim; ++i) p.matrix(i, dim - 1 - i) = 1;
            break;
        case ParityKind::SwapPairs:
            for (Eigen::Index i = 0; i + 1 < dim; i += 2) {
                p.matrix(i, i + 1) = 1;
                p.matrix(i + 1, i) = 1;
            }
            if (dim % 2 == 1) p.matrix(dim - 1, dim - 1) = 1;
            break;
        case ParityKind::Explicit:
            throw Error(ErrorKind::InvalidParity, "explicit parity requires a matrix");
    }
    return p;
}

/// Validates a user-supplied parity: P^2 = I and P = P^dagger within 1e-12.
template <typename Derived>
ParityOperator<typename Derived::RealScalar> make_parity(const Eigen::MatrixBase<Derived>& explicit_matrix) {
    using Real = typename Derived::RealScalar;
    try {
        require_square(explicit_matrix, "parity matrix");
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidParity, e.what());
    }
    const ComplexMatrix<Real> p = explicit_matrix.template cast<std::complex<Real>>();
    const Real involution = identity_defect(p * p);
    const Real hermiticity = max_abs(p - p.adjoint());
    if (!(involution <= Real(kParityTolerance))) {
        throw Error(ErrorKind::InvalidParity, "P^2 != I (defect " + std::to_string(double(involution)) + ")");
    }
    if (!(hermiticity <= Real(kParityTolerance))) {
        throw Error(ErrorKind::InvalidParity, "P != P^dagger (defect " + std::to_string(double(hermiticity)) + ")");
    }
    return {p, ParityKind::Explicit};
}

template <typename Derived, typename Real>
void require_matching(const Eigen::MatrixBase<Derived>& h, const ParityOperator<Real>& p) {
    require_square(h, "Hamiltonian");
    if (h.rows() != p.dim()) throw Error(ErrorKind::InvalidInput, "Hamiltonian and parity dimensions differ");
}

/// max_abs(P conj(H) P - H)
template <typename Derived, typename Real>
Real check_pt_symmetry(const Eigen::MatrixBase<Derived>& h, const ParityOperator<Real>& p) {
    require_matching(h, p);
    const ComplexMatrix<Real> hc = h.template cast<std::complex<Real>>();
    return max_abs(p.matrix * hc.conjugate() * p.matrix - hc);
}

/// max_abs(P H P - H^dagger)
template <typename Derived, typename Real>
Real check_pseudo_hermiticity(const Eigen::MatrixBase<Derived>& h, const ParityOperator<Real>& p) {
    require_matching(h, p);
    const ComplexMatrix<Real> hc = h.template cast<std::complex<Real>>();
    return max_abs(p.matrix * hc * p.matrix - hc.adjoint());
}

struct SpectrumClassification {
    std::vector<Eigen::Index> real_indices;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> conjugate_pairs;  // (Im > 0, Im < 0)
    bool unbroken = true;
};

/// Splits a spectrum into real eigenvalues and complex-conjugate pairs.
/// Real means |Im E| <= tol_real (1 + |E|); the same scaled tolerance bounds
/// |E_a - conj(E_b)| for a pair.
template <typename Derived>
SpectrumClassification classify_spectrum(const Eigen::MatrixBase<Derived>& values,
                                         typename Derived::RealScalar tol_real =
                                             typename Derived::RealScalar(kDefaultTolReal)) {
    using Real = typename Derived::RealScalar;
    if (!values.allFinite()) throw Error(ErrorKind::InvalidInput, "eigenvalues must be finite");
    SpectrumClassification out;
    std::vector<Eigen::Index> complex_indices;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const auto e = std::complex<Real>(values(i));
        if (std::abs(e.imag()) <= tol_real * (Real(1) + std::abs(e))) {
            out.real_indices.push_back(i);
        } else {
            complex_indices.push_back(i);
        }
    }

    std::vector<std::tuple<Real, Eigen::Index, Eigen::Index>> candidates;
    for (std::size_t a = 0; a < complex_indices.size(); ++a) {
        for (std::size_t b = a + 1; b < complex_indices.size(); ++b) {
            const auto ea = std::complex<Real>(values(complex_indices[a]));
            const auto eb = std::complex<Real>(values(complex_indices[b]));
            if ((ea.imag() > 0) == (eb.imag() > 0)) continue;
            candidates.emplace_back(std::abs(ea - std::conj(eb)), complex_indices[a], complex_indices[b]);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<Eigen::Index> partner(static_cast<std::size_t>(values.size()), -1);
    for (const auto& [d, a, b] : candidates) {
        if (partner[static_cast<std::size_t>(a)] >= 0 || partner[static_cast<std::size_t>(b)] >= 0) continue;
        const Real scale = Real(1) + std::max(std::abs(values(a)), std::abs(values(b)));
        if (!(d <= tol_real * scale)) continue;
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
        const bool a_upper = std::complex<Real>(values(a)).imag() > 0;
        out.conjugate_pairs.emplace_back(a_upper ? a : b, a_upper ? b : a);
    }
    for (const Eigen::Index i : complex_indices) {
        if (partner[static_cast<std::size_t>(i)] < 0) {
            const auto e = std::complex<Real>(values(i));
            throw Error(ErrorKind::UnpairedComplexEigenvalue,
                        "eigenvalue " + std::to_string(double(e.real())) + " + " + std::to_string(double(e.imag())) +
                            "i has no conjugate partner");
        }
    }
    std::sort(out.conjugate_pairs.begin(), out.conjugate_pairs.end());
    out.unbroken = out.conjugate_pairs.empty();
    return out;
}

template <typename Real>
struct PtPhase {
    Real alpha;   // P conj(v) = e^{i alpha} v, alpha in (-pi, pi]
    Real defect;  // ||P conj(v) - e^{i alpha} v|| / ||v||
};

/// Proportionality phase between P conj(v) and v.
template <typename Derived, typename Real>
PtPhase<Real> pt_phase(const Eigen::MatrixBase<Derived>& v, const ParityOperator<Real>& p) {
    const ComplexVector<Real> vc = v.template cast<std::complex<Real>>();
    const Real len = vc.norm();
    if (!(len > Real(0))) throw Error(ErrorKind::InvalidInput, "zero state");
    const ComplexVector<Real> w = p.matrix * vc.conjugate();
    const std::complex<Real> c = vc.dot(w) / (len * len);
    const Real alpha = std::arg(c);
    const Real defect = (w - std::polar(Real(1), alpha) * vc).norm() / len;
    return {alpha, defect};
}

/// A PT-invariant state is fixed only up to a real factor; the sign is chosen
/// so the first entry with at least half the largest modulus has positive
/// real part (positive imaginary part if the real part is negligible).
template <typename Real>
int pt_sign_convention(const ComplexVector<Real>& v) {
    const Real largest = v.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const std::complex<Real> z = v(j);
        if (std::abs(z) < Real(0.5) * largest) continue;
        if (std::abs(z.real()) > Real(1e-6) * std::abs(z)) return z.real() > 0 ? 1 : -1;
        return z.imag() > 0 ? 1 : -1;
    }
    return 1;
}

/// Re-phases every state so that P conj(|E_n>) = |E_n>; duals receive the
/// same ket phase so <E^n|E_m> is unchanged.
template <typename Real>
BiorthonormalSystem<Real> fix_pt_phase(const BiorthonormalSystem<Real>& sys, const ParityOperator<Real>& p,
                                       Real tol = Real(kDefaultTolSig)) {
    if (sys.states.rows() != p.dim()) throw Error(ErrorKind::InvalidInput, "system and parity dimensions differ");
    BiorthonormalSystem<Real> out = sys;
    for (Eigen::Index n = 0; n < sys.dim(); ++n) {
        const auto phase = pt_phase(sys.states.col(n), p);
        if (!(phase.defect <= tol)) {
            throw Error(ErrorKind::NotPTInvariant, "state " + std::to_string(n) +
                                                       " is not PT-invariant up to a phase (defect " +
                                                       std::to_string(double(phase.defect)) + ")");
        }
        std::complex<Real> half = std::polar(Real(1), phase.alpha / 2);
        half *= Real(pt_sign_convention(ComplexVector<Real>(half * sys.states.col(n))));
        out.states.col(n) *= half;
        out.duals.col(n) *= half;
    }
    return out;
}

template <typename Real>
struct Signature {
    Eigen::VectorXi values;      // s_n = +-1
    RealVector<Real> residuals;  // || |E^n> - s_n P|E_n> ||
    bool valid = false;

    Eigen::Index size() const { return values.size(); }
    /// diag(s) as a complex diagonal, for use in products.
    ComplexVector<Real> diagonal() const { return values.template cast<Real>().template cast<std::complex<Real>>(); }
    bool mixed() const { return values.size() > 0 && values.minCoeff() != values.maxCoeff(); }
};

template <typename Real>
struct SignedSystem {
    BiorthonormalSystem<Real> system;  // rescaled so |E^n> = s_n P|E_n>
    Signature<Real> signature;
};

/// Reads off s_n = sign Re <E^n|P|E^n> from a phase-fixed system and rescales
/// each (state, dual) pair by a common real factor so |E^n> = s_n P|E_n> holds
/// vector-wise. `valid` is set iff every residual is within tol_sig.
template <typename Real>
SignedSystem<Real> extract_signature(const BiorthonormalSystem<Real>& sys, const ParityOperator<Real>& p,
                                     Real tol_sig = Real(kDefaultTolSig)) {
    const Eigen::Index n = sys.dim();
    if (sys.states.rows() != p.dim()) throw Error(ErrorKind::InvalidInput, "system and parity dimensions differ");
    SignedSystem<Real> out{sys, {Eigen::VectorXi(n), RealVector<Real>(n), true}};
    for (Eigen::Index k = 0; k < n; ++k) {
        const ComplexVector<Real> dual = sys.duals.col(k);
        const std::complex<Real> parity_norm = dual.dot(p.matrix * dual);
        if (!(std::abs(parity_norm.real()) > tol_sig * dual.squaredNorm())) {
            throw Error(ErrorKind::SignatureUndefined,
                        "<E^n|P|E^n> vanishes for n = " + std::to_string(k) + " (degeneracy or broken phase)");
        }
        const int s = parity_norm.real() > 0 ? 1 : -1;
        const Real a = std::sqrt(dual.norm() / sys.states.col(k).norm());
        out.system.states.col(k) *= a;
        out.system.duals.col(k) /= a;
        out.signature.values(k) = s;
        out.signature.residuals(k) =
            (out.system.duals.col(k) - Real(s) * (p.matrix * out.system.states.col(k))).norm();
        if (!(out.signature.residuals(k) <= tol_sig)) out.signature.valid = false;
    }
    out.system.duality_defect = identity_defect(out.system.duals.adjoint() * out.system.states);
    const auto completeness = check_completeness(out.system);
    out.system.completeness_defect = std::max(completeness.right_left, completeness.left_right);
    return out;
}

/// C_s = sum_m s_m |E_m><E^m|
template <typename Real>
ComplexMatrix<Real> build_charge(const BiorthonormalSystem<Real>& sys, const Signature<Real>& s) {
    if (s.size() != sys.dim()) throw Error(ErrorKind::InvalidInput, "signature length does not match system");
    return sys.states * s.diagonal().asDiagonal() * sys.duals.adjoint();
}

}  // namespace ptgram
