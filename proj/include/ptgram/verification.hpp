#pragma once

// End-to-end pipeline: pairing, bi-orthonormalization, classification, PT
// phase fixing, signature, Gram matrix and every relation check, plus the
// dual-route benchmark.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptgram/biortho.hpp"
#include "ptgram/gram.hpp"
#include "ptgram/linalg.hpp"
#include "ptgram/pt_structure.hpp"

namespace ptgram {

struct VerificationConfig {
    double tol_eig = kDefaultTolEig;
    double tol_pair = kDefaultTolPair;  // scaled by max(1, max_abs(H))
    double tol_dup = kDefaultTolDup;
    double tol_real = kDefaultTolReal;
    double tol_sig = kDefaultTolSig;
    double tol_relation = 1e-8;    // completeness, duality, C_s, norms, theorem, duals
    double tol_symmetry = 1e-12;   // PT-comm and pseudo-herm, scaled by max(1, max_abs(H))
    double tol_diagonal = 1e-10;   // |G_nn - (G^{-1})_nn|
    double condition_limit = kExceptionalConditionThreshold;
};

/// The fixed checklist, in report order.
enum class RelationId {
    Completeness,           // Eq3
    Duality,                // Eq4
    SignatureRelation,      // Eq5
    ChargeProperties,       // Eq6-props
    UnconventionalCompleteness,  // Eq8
    IndefiniteNorms,        // Eq9
    SignatureTheorem,       // Eq12
    InversionFreeDuals,     // Eq16
    PTCommutation,          // PT-comm
    PseudoHermiticity,      // pseudo-herm
    DiagonalEquality,       // diag-equality
};

inline constexpr RelationId kAllRelations[] = {
    RelationId::Completeness,       RelationId::Duality,          RelationId::SignatureRelation,
    RelationId::ChargeProperties,   RelationId::UnconventionalCompleteness, RelationId::IndefiniteNorms,
    RelationId::SignatureTheorem,   RelationId::InversionFreeDuals, RelationId::PTCommutation,
    RelationId::PseudoHermiticity,  RelationId::DiagonalEquality,
};

/// Stable identifier used in reports ("Eq3", ..., "diag-equality").
std::string_view relation_key(RelationId id) noexcept;
std::string_view relation_description(RelationId id) noexcept;

enum class RelationStatus { Pass, Fail, NotApplicable };
std::string_view to_string(RelationStatus status) noexcept;

struct RelationEntry {
    RelationId id;
    RelationStatus status = RelationStatus::NotApplicable;
    std::optional<double> residual;
    double tolerance = 0;
};

struct StageRecord {
    std::string name;
    double seconds = 0;
    std::optional<std::string> error;
};

enum class RunStatus { Ok, NearExceptional, NumericalFailure };
std::string_view to_string(RunStatus status) noexcept;

struct VerificationReport {
    Eigen::Index dim = 0;
    MatrixXc hamiltonian;
    ParityOperator<double> parity;

    RunStatus status = RunStatus::Ok;
    std::optional<std::string> failure;  // first numerical failure message

    std::vector<RelationEntry> relations;  // one per kAllRelations entry, same order
    std::vector<StageRecord> stages;

    std::optional<ExceptionalDiagnostics<double>> diagnostics;
    std::optional<SpectrumClassification> classification;
    std::optional<Signature<double>> signature;
    std::optional<BiorthonormalSystem<double>> system;  // final (rescaled when signature exists)
    std::optional<MatrixXc> gram;
    std::optional<MatrixXc> gram_inverse;  // sign-flip route
    std::optional<MatrixXc> charge;
    std::optional<double> charge_nonhermiticity;  // max_abs(C_s - C_s^dagger)
    double seconds_dual_inversion = 0;
    double seconds_dual_signature = 0;

    const RelationEntry& relation(RelationId id) const;
    bool all_applicable_pass() const;
    std::size_t applicable_count() const;
    std::size_t pass_count() const;
};

/// Runs every stage and records residuals. Stage errors are captured in the
/// report, never thrown, for any finite square H with a matching parity.
VerificationReport full_verification(const MatrixXc& h, const ParityOperator<double>& p,
                                     const VerificationConfig& config = {});

/// Unbroken-phase analysis products for ensembles and benchmarks.
struct PTAnalysis {
    SignedSystem<double> signed_system;
    GramPair<double> gram;
    ExceptionalDiagnostics<double> diagnostics;
};

/// Pair, biorthonormalize, classify, phase-fix, extract the signature and build
/// G. Throws on any failure, including a broken spectrum (NotPTInvariant) or
/// an invalid signature (SignatureUndefined).
PTAnalysis analyze_pt(const MatrixXc& h, const ParityOperator<double>& p, const VerificationConfig& config = {});

struct BenchRow {
    Eigen::Index dim = 0;
    double seconds_inversion = 0;  // median
    double seconds_signature = 0;  // median
    double speedup = 0;
    double discrepancy = 0;        // max per-vector 2-norm difference of the two routes
};

/// Median timings of dual_via_inversion vs dual_via_signature on unbroken
/// random_pt instances (seed + dim). Zero repetitions yield an empty table.
std::vector<BenchRow> bench_dual_routes(const std::vector<Eigen::Index>& dims, int repetitions, std::uint64_t seed,
                                        const VerificationConfig& config = {});

}  // namespace ptgram
