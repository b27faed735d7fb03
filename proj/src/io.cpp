#include "ptgram/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ptgram {
namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& problem) {
    throw Error(ErrorKind::InvalidInput, "field '" + field + "': " + problem);
}

json optional_number(const std::optional<double>& value) {
    return value ? json(*value) : json(nullptr);
}

json complex_list(const VectorXc& values) {
    json out = json::array();
    for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(complex_to_json(values(i)));
    return out;
}

}  // namespace

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const MatrixXc& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json columns_to_json(const MatrixXc& basis) {
    return matrix_to_json(basis.transpose());
}

MatrixXc matrix_from_json(const json& node, const std::string& field) {
    if (!node.is_array() || node.empty()) bad_field(field, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(node.size());
    Eigen::Index cols = -1;
    MatrixXc m;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        const json& row = node[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.empty()) bad_field(row_field, "expected a non-empty array of [re, im] pairs");
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            bad_field(row_field, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& entry = row[static_cast<std::size_t>(c)];
            const std::string entry_field = row_field + "[" + std::to_string(c) + "]";
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                bad_field(entry_field, "expected a [re, im] pair of numbers");
            }
            const std::complex<double> z(entry[0].get<double>(), entry[1].get<double>());
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad_field(entry_field, "entry is not finite");
            m(r, c) = z;
        }
    }
    return m;
}

json matrix_file_to_json(const MatrixFile& file) {
    json root = json::object();
    root["dim"] = file.h.rows();
    root["h"] = matrix_to_json(file.h);
    root["p"] = matrix_to_json(file.p);
    return root;
}

MatrixFile matrix_file_from_json(const json& root) {
    if (!root.is_object()) bad_field("<root>", "expected a JSON object");
    if (!root.contains("dim")) bad_field("dim", "missing");
    if (!root["dim"].is_number_integer() || root["dim"].get<long long>() < 1) bad_field("dim", "expected an integer >= 1");
    const auto dim = static_cast<Eigen::Index>(root["dim"].get<long long>());
    MatrixFile file;
    for (const char* key : {"h", "p"}) {
        if (!root.contains(key)) bad_field(key, "missing");
        MatrixXc m = matrix_from_json(root[key], key);
        if (m.rows() != dim || m.cols() != dim) {
            bad_field(key, "expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        }
        (std::string_view(key) == "h" ? file.h : file.p) = std::move(m);
    }
    return file;
}

MatrixFile parse_matrix_file(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    return matrix_file_from_json(root);
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_file(buffer.str());
}

json report_to_json(const VerificationReport& report, std::string_view command) {
    json root = json::object();
    root["schema"] = kReportSchema;
    root["command"] = command;
    root["dim"] = report.dim;
    root["status"] = to_string(report.status);
    root["failure"] = report.failure ? json(*report.failure) : json(nullptr);
    root["parity"] = {{"kind", to_string(report.parity.kind)}, {"trivial", report.parity.trivial()}};
    root["hamiltonian"] = matrix_to_json(report.hamiltonian);
    root["parity_matrix"] = matrix_to_json(report.parity.matrix);

    json relations = json::array();
    for (const auto& entry : report.relations) {
        relations.push_back({{"id", relation_key(entry.id)},
                             {"relation", relation_description(entry.id)},
                             {"status", to_string(entry.status)},
                             {"residual", optional_number(entry.residual)},
                             {"tolerance", entry.tolerance}});
    }
    root["relations"] = std::move(relations);
    root["summary"] = {{"total", report.relations.size()},
                       {"applicable", report.applicable_count()},
                       {"passed", report.pass_count()},
                       {"all_applicable_pass", report.all_applicable_pass()}};

    if (report.diagnostics) {
        root["diagnostics"] = {{"eigvec_condition", report.diagnostics->eigvec_condition},
                               {"min_eigen_gap", report.diagnostics->min_eigen_gap},
                               {"near_exceptional", report.status == RunStatus::NearExceptional}};
    }
    if (report.system) {
        json spectrum = {{"eigenvalues", complex_list(report.system->eigenvalues)}};
        if (report.classification) {
            json pairs = json::array();
            for (const auto& [a, b] : report.classification->conjugate_pairs) pairs.push_back({a, b});
            spectrum["classification"] = {{"real_indices", report.classification->real_indices},
                                          {"conjugate_pairs", std::move(pairs)},
                                          {"unbroken", report.classification->unbroken}};
        }
        root["spectrum"] = std::move(spectrum);
        root["states"] = columns_to_json(report.system->states);
        root["duals"] = columns_to_json(report.system->duals);
    }
    if (report.signature) {
        std::vector<int> values(report.signature->values.data(),
                                report.signature->values.data() + report.signature->values.size());
        std::vector<double> residuals(report.signature->residuals.data(),
                                      report.signature->residuals.data() + report.signature->residuals.size());
        root["signature"] = {{"values", values}, {"residuals", residuals}, {"valid", report.signature->valid}};
    }
    if (report.gram) root["gram"] = matrix_to_json(*report.gram);
    if (report.gram_inverse) root["gram_inverse"] = matrix_to_json(*report.gram_inverse);
    if (report.charge_nonhermiticity) root["charge_nonhermiticity"] = *report.charge_nonhermiticity;

    json stages = json::array();
    for (const auto& stage : report.stages) {
        stages.push_back({{"name", stage.name},
                          {"seconds", stage.seconds},
                          {"error", stage.error ? json(*stage.error) : json(nullptr)}});
    }
    root["timings"] = {{"stages", std::move(stages)},
                       {"dual_inversion_seconds", report.seconds_dual_inversion},
                       {"dual_signature_seconds", report.seconds_dual_signature}};
    root["notes"] = json::array({
        "states are re-phased so that P conj(|E_n>) = |E_n>, then each (state, dual) pair is rescaled by a common "
        "real factor so that |E^n> = s_n P|E_n>; the Gram matrix refers to this normalization",
        "inversion-free duals use |E^n> = s_n sum_m s_m G_mn |E_m>",
        "time reversal is entrywise complex conjugation in the working basis",
    });
    return root;
}

void write_report_text(std::ostream& os, const VerificationReport& report, std::string_view command) {
    os << "ptgram " << command << "  dim=" << report.dim << "  parity=" << to_string(report.parity.kind)
       << (report.parity.trivial() ? " (trivial)" : "") << "  status=" << to_string(report.status) << '\n';
    if (report.failure) os << "  " << *report.failure << '\n';
    if (report.system) {
        os << "eigenvalues:\n";
        for (Eigen::Index i = 0; i < report.system->eigenvalues.size(); ++i) {
            const auto e = report.system->eigenvalues(i);
            os << "  " << std::setw(4) << i << "  " << std::setprecision(12) << std::setw(20) << e.real() << "  "
               << std::setw(20) << e.imag();
            if (report.signature) os << "  s=" << std::showpos << report.signature->values(i) << std::noshowpos;
            os << '\n';
        }
    }
    if (report.classification) {
        os << "phase: " << (report.classification->unbroken ? "unbroken" : "broken") << " ("
           << report.classification->conjugate_pairs.size() << " conjugate pairs)\n";
    }
    os << "relations:\n";
    for (const auto& entry : report.relations) {
        os << "  " << std::left << std::setw(14) << relation_key(entry.id) << std::setw(15) << to_string(entry.status)
           << std::right;
        if (entry.residual) {
            os << std::scientific << std::setprecision(3) << *entry.residual << " <= " << entry.tolerance
               << std::defaultfloat;
        }
        os << '\n';
    }
    os << report.pass_count() << "/" << report.applicable_count() << " applicable relations pass\n";
}

json bench_to_json(const std::vector<BenchRow>& rows, int repetitions, std::uint64_t seed) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back({{"dim", row.dim},
                       {"t_inv", row.seconds_inversion},
                       {"t_sig", row.seconds_signature},
                       {"speedup", row.speedup},
                       {"discrepancy", row.discrepancy}});
    }
    return {{"schema", kBenchSchema}, {"repetitions", repetitions}, {"seed", seed}, {"rows", std::move(out)}};
}

void write_bench_text(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << std::setw(6) << "dim" << std::setw(14) << "t_inv[s]" << std::setw(14) << "t_sig[s]" << std::setw(10)
       << "speedup" << std::setw(14) << "discrepancy" << '\n';
    for (const auto& row : rows) {
        os << std::setw(6) << row.dim << std::scientific << std::setprecision(3) << std::setw(14)
           << row.seconds_inversion << std::setw(14) << row.seconds_signature << std::fixed << std::setprecision(2)
           << std::setw(10) << row.speedup << std::scientific << std::setprecision(3) << std::setw(14)
           << row.discrepancy << std::defaultfloat << '\n';
    }
}

}  // namespace ptgram
