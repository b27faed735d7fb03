#include "ptgram/verification.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "ptgram/models.hpp"

namespace ptgram {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

class ReportBuilder {
public:
    explicit ReportBuilder(VerificationReport& report) : report_(report) {
        for (const auto id : kAllRelations) {
            RelationEntry entry;
            entry.id = id;
            report_.relations.push_back(entry);
        }
    }

    void record(RelationId id, double residual, double tolerance) {
        auto& entry = slot(id);
        entry.residual = residual;
        entry.tolerance = tolerance;
        entry.status = residual <= tolerance ? RelationStatus::Pass : RelationStatus::Fail;
    }

    void fail(RelationId id, double tolerance) {
        auto& entry = slot(id);
        entry.residual.reset();
        entry.tolerance = tolerance;
        entry.status = RelationStatus::Fail;
    }

    // Runs one stage; returns false (and records the error) if it threw.
    bool stage(const std::string& name, const std::function<void()>& body) {
        const auto start = Clock::now();
        StageRecord rec;
        rec.name = name;
        bool ok = true;
        try {
            body();
        } catch (const Error& e) {
            ok = false;
            rec.error = e.what();
            if (is_numerical_failure(e.kind())) numerical_failure(e.what());
        } catch (const std::exception& e) {
            ok = false;
            rec.error = e.what();
            numerical_failure(e.what());
        }
        rec.seconds = seconds_since(start);
        report_.stages.push_back(std::move(rec));
        return ok;
    }

private:
    RelationEntry& slot(RelationId id) {
        return *std::find_if(report_.relations.begin(), report_.relations.end(),
                             [id](const RelationEntry& e) { return e.id == id; });
    }

    void numerical_failure(const std::string& what) {
        report_.status = RunStatus::NumericalFailure;
        if (!report_.failure) report_.failure = what;
    }

    VerificationReport& report_;
};

}  // namespace

std::string_view relation_key(RelationId id) noexcept {
    switch (id) {
        case RelationId::Completeness: return "Eq3";
        case RelationId::Duality: return "Eq4";
        case RelationId::SignatureRelation: return "Eq5";
        case RelationId::ChargeProperties: return "Eq6-props";
        case RelationId::UnconventionalCompleteness: return "Eq8";
        case RelationId::IndefiniteNorms: return "Eq9";
        case RelationId::SignatureTheorem: return "Eq12";
        case RelationId::InversionFreeDuals: return "Eq16";
        case RelationId::PTCommutation: return "PT-comm";
        case RelationId::PseudoHermiticity: return "pseudo-herm";
        case RelationId::DiagonalEquality: return "diag-equality";
    }
    return "unknown";
}

std::string_view relation_description(RelationId id) noexcept {
    switch (id) {
        case RelationId::Completeness: return "sum_n |E^n><E_n| = sum_n |E_n><E^n| = I";
        case RelationId::Duality: return "<E^n|E_m> = delta_nm";
        case RelationId::SignatureRelation: return "|E^n> = s_n P|E_n>";
        case RelationId::ChargeProperties: return "C_s^2 = I, [C_s, H] = 0, P C_s|E_n> = |E^n>";
        case RelationId::UnconventionalCompleteness: return "sum_n s_n |E_n><E_n| P = I";
        case RelationId::IndefiniteNorms: return "s_n |E_n>^T |E_m> = delta_nm";
        case RelationId::SignatureTheorem: return "G^{-1} = S G S";
        case RelationId::InversionFreeDuals:
            return "|E^n> = s_n sum_m s_m G_mn |E_m> matches inversion route and adjoint eigenvectors";
        case RelationId::PTCommutation: return "P conj(H) P = H";
        case RelationId::PseudoHermiticity: return "P H P = H^dagger";
        case RelationId::DiagonalEquality: return "G_nn = (G^{-1})_nn";
    }
    return "unknown";
}

std::string_view to_string(RelationStatus status) noexcept {
    switch (status) {
        case RelationStatus::Pass: return "pass";
        case RelationStatus::Fail: return "fail";
        case RelationStatus::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

std::string_view to_string(RunStatus status) noexcept {
    switch (status) {
        case RunStatus::Ok: return "ok";
        case RunStatus::NearExceptional: return "near-exceptional";
        case RunStatus::NumericalFailure: return "numerical-failure";
    }
    return "unknown";
}

const RelationEntry& VerificationReport::relation(RelationId id) const {
    const auto it = std::find_if(relations.begin(), relations.end(), [id](const RelationEntry& e) { return e.id == id; });
    if (it == relations.end()) throw Error(ErrorKind::InvalidInput, "relation missing from report");
    return *it;
}

bool VerificationReport::all_applicable_pass() const {
    return std::none_of(relations.begin(), relations.end(),
                        [](const RelationEntry& e) { return e.status == RelationStatus::Fail; });
}

std::size_t VerificationReport::applicable_count() const {
    return static_cast<std::size_t>(std::count_if(relations.begin(), relations.end(), [](const RelationEntry& e) {
        return e.status != RelationStatus::NotApplicable;
    }));
}

std::size_t VerificationReport::pass_count() const {
    return static_cast<std::size_t>(std::count_if(relations.begin(), relations.end(), [](const RelationEntry& e) {
        return e.status == RelationStatus::Pass;
    }));
}

VerificationReport full_verification(const MatrixXc& h, const ParityOperator<double>& p,
                                     const VerificationConfig& config) {
    require_matching(h, p);
    VerificationReport report;
    report.dim = h.rows();
    report.hamiltonian = h;
    report.parity = p;
    ReportBuilder rb(report);

    const double h_scale = std::max(1.0, max_abs(h));
    const double tol_symmetry = config.tol_symmetry * h_scale;
    rb.record(RelationId::PTCommutation, check_pt_symmetry(h, p), tol_symmetry);
    rb.record(RelationId::PseudoHermiticity, check_pseudo_hermiticity(h, p), tol_symmetry);

    EigenSystem<double> eigen;
    if (!rb.stage("pair", [&] { eigen = pair_left_right(h, config.tol_pair * h_scale, config.tol_eig); })) {
        return report;
    }
    rb.stage("diagnose", [&] {
        report.diagnostics = diagnose_exceptional(eigen);
        if (report.diagnostics->near_exceptional(config.condition_limit)) {
            report.status = RunStatus::NearExceptional;
            report.failure = "eigenvector condition " + std::to_string(report.diagnostics->eigvec_condition) +
                             " exceeds " + std::to_string(config.condition_limit) + " (near an exceptional point)";
        }
    });

    BiorthonormalSystem<double> biortho;
    if (!rb.stage("biorthonormalize", [&] { biortho = biorthonormalize(eigen, config.tol_dup); })) {
        return report;
    }
    report.system = biortho;
    const auto record_basis_relations = [&](const BiorthonormalSystem<double>& sys) {
        rb.record(RelationId::Completeness, sys.completeness_defect, config.tol_relation);
        rb.record(RelationId::Duality, sys.duality_defect, config.tol_relation);
    };
    record_basis_relations(biortho);

    rb.stage("classify", [&] { report.classification = classify_spectrum(biortho.eigenvalues, config.tol_real); });
    if (!report.classification || !report.classification->unbroken) return report;

    BiorthonormalSystem<double> phased;
    SignedSystem<double> signed_sys;
    const bool signed_ok =
        rb.stage("phase-fix", [&] { phased = fix_pt_phase(biortho, p, config.tol_sig); }) &&
        rb.stage("signature", [&] { signed_sys = extract_signature(phased, p, config.tol_sig); });
    if (!signed_ok) {
        rb.fail(RelationId::SignatureRelation, config.tol_sig);
        return report;
    }
    const auto& sys = signed_sys.system;
    const auto& s = signed_sys.signature;
    report.system = sys;
    report.signature = s;
    record_basis_relations(sys);
    rb.record(RelationId::SignatureRelation, s.residuals.maxCoeff(), config.tol_sig);

    rb.stage("charge", [&] {
        const MatrixXc charge = build_charge(sys, s);
        const double squares = identity_defect(charge * charge);
        const double commutes = max_abs(charge * h - h * charge) / h_scale;
        const double partners = max_column_distance(p.matrix * charge * sys.states, sys.duals);
        rb.record(RelationId::ChargeProperties, std::max({squares, commutes, partners}), config.tol_relation);
        report.charge_nonhermiticity = max_abs(charge - charge.adjoint());
        report.charge = charge;
    });
    rb.record(RelationId::UnconventionalCompleteness, check_unconventional_completeness(sys, s, p),
              config.tol_relation);
    rb.record(RelationId::IndefiniteNorms, check_indefinite_norms(sys, s), config.tol_relation);

    GramPair<double> gram;
    if (!rb.stage("gram", [&] { gram = gram_matrix(sys); })) return report;
    report.gram = gram.gram;

    rb.stage("signature-theorem", [&] {
        const auto residuals = verify_signature_theorem(gram.gram, s);
        rb.record(RelationId::SignatureTheorem, residuals.product, config.tol_relation);
        rb.record(RelationId::DiagonalEquality, residuals.diagonal, config.tol_diagonal);
        report.gram_inverse = inverse_via_signature(gram.gram, s);
    });

    MatrixXc by_inversion;
    MatrixXc by_signature;
    const bool inverted = rb.stage("dual-inversion", [&] { by_inversion = dual_via_inversion(sys.states, gram.gram); });
    report.seconds_dual_inversion = report.stages.back().seconds;
    rb.stage("dual-signature", [&] { by_signature = dual_via_signature(sys.states, gram.gram, s); });
    report.seconds_dual_signature = report.stages.back().seconds;
    if (inverted) {
        const double discrepancy = std::max(max_column_distance(by_signature, by_inversion),
                                            max_column_distance(by_signature, sys.duals));
        rb.record(RelationId::InversionFreeDuals, discrepancy, config.tol_relation);
    }
    return report;
}

PTAnalysis analyze_pt(const MatrixXc& h, const ParityOperator<double>& p, const VerificationConfig& config) {
    require_matching(h, p);
    const double h_scale = std::max(1.0, max_abs(h));
    const auto eigen = pair_left_right(h, config.tol_pair * h_scale, config.tol_eig);
    const auto diagnostics = diagnose_exceptional(eigen);
    const auto biortho = biorthonormalize(eigen, config.tol_dup);
    if (!classify_spectrum(biortho.eigenvalues, config.tol_real).unbroken) {
        throw Error(ErrorKind::NotPTInvariant, "spectrum is in the broken PT phase");
    }
    auto signed_sys = extract_signature(fix_pt_phase(biortho, p, config.tol_sig), p, config.tol_sig);
    if (!signed_sys.signature.valid) {
        throw Error(ErrorKind::SignatureUndefined, "signature residuals exceed tolerance");
    }
    auto gram = gram_matrix(signed_sys.system);
    return {std::move(signed_sys), std::move(gram), diagnostics};
}

std::vector<BenchRow> bench_dual_routes(const std::vector<Eigen::Index>& dims, int repetitions, std::uint64_t seed,
                                        const VerificationConfig& config) {
    std::vector<BenchRow> rows;
    if (repetitions <= 0) return rows;
    for (const Eigen::Index dim : dims) {
        if (dim < 2) throw Error(ErrorKind::InvalidInput, "benchmark dimensions must be >= 2");
        const auto model = random_pt(dim, seed + static_cast<std::uint64_t>(dim), 0.5, true);
        const auto analysis = analyze_pt(model.hamiltonian, model.parity, config);
        const auto& states = analysis.signed_system.system.states;
        const auto& g = analysis.gram.gram;
        const auto& s = analysis.signed_system.signature;

        std::vector<double> t_inv;
        std::vector<double> t_sig;
        MatrixXc by_inversion;
        MatrixXc by_signature;
        for (int r = 0; r < repetitions; ++r) {
            auto start = Clock::now();
            by_inversion = dual_via_inversion(states, g);
            t_inv.push_back(seconds_since(start));
            start = Clock::now();
            by_signature = dual_via_signature(states, g, s);
            t_sig.push_back(seconds_since(start));
        }
        BenchRow row{dim, median(t_inv), median(t_sig), 0, max_column_distance(by_inversion, by_signature)};
        row.speedup = row.seconds_signature > 0 ? row.seconds_inversion / row.seconds_signature : 0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ptgram
