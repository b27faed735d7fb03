#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptgram/io.hpp"
#include "ptgram/models.hpp"
#include "ptgram/verification.hpp"

namespace ptgram::cli {
namespace {

enum class Command { Analyze, Verify, Bench, Generate };
enum class Format { Json, Text };

struct RunConfig {
    Command command = Command::Verify;
    std::optional<ModelSpec> model;
    std::optional<std::string> input;
    std::optional<std::string> output;
    Format format = Format::Json;
    VerificationConfig tolerances;
    std::vector<Eigen::Index> dims;
    int reps = 5;
    std::uint64_t seed = 0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Loaded {
    MatrixXc h;
    ParityOperator<double> p;
};

Loaded load_problem(const RunConfig& cfg) {
    if (cfg.input) {
        const MatrixFile file = read_matrix_file(*cfg.input);
        return {file.h, make_parity(file.p)};
    }
    Model m = build_model(*cfg.model);
    return {std::move(m.hamiltonian), std::move(m.parity)};
}

// Writes `text` to --output or to `out`.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.output) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open output file '" + *cfg.output + "'");
    file << text;
    if (!file) throw Error(ErrorKind::InvalidInput, "failed writing output file '" + *cfg.output + "'");
}

std::string render_report(const RunConfig& cfg, const VerificationReport& report, std::string_view command) {
    std::ostringstream os;
    if (cfg.format == Format::Json) {
        os << report_to_json(report, command).dump(2) << '\n';
    } else {
        write_report_text(os, report, command);
    }
    return os.str();
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const Loaded problem = load_problem(cfg);
    const auto report = full_verification(problem.h, problem.p, cfg.tolerances);
    emit(cfg, render_report(cfg, report, "analyze"), out);
    return report.status == RunStatus::NumericalFailure ? kNumericalFailure : kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Loaded problem = load_problem(cfg);
    const auto report = full_verification(problem.h, problem.p, cfg.tolerances);
    emit(cfg, render_report(cfg, report, "verify"), out);
    if (report.status != RunStatus::Ok) return kNumericalFailure;
    return report.all_applicable_pass() ? kSuccess : kVerificationFailure;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    const auto rows = bench_dual_routes(cfg.dims, cfg.reps, cfg.seed, cfg.tolerances);
    std::ostringstream os;
    if (cfg.format == Format::Json) {
        os << bench_to_json(rows, cfg.reps, cfg.seed).dump(2) << '\n';
    } else {
        write_bench_text(os, rows);
    }
    emit(cfg, os.str(), out);
    const bool consistent = std::all_of(rows.begin(), rows.end(), [&](const BenchRow& r) {
        return r.discrepancy <= cfg.tolerances.tol_relation;
    });
    return consistent ? kSuccess : kVerificationFailure;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    const Model m = build_model(*cfg.model);
    emit(cfg, matrix_file_to_json({m.hamiltonian, m.parity.matrix}).dump(2) + "\n", out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bi-orthonormal eigensystems, PT signatures and Gram-matrix inversion by sign flips", "ptgram"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string model_name;
    std::string format = "json";
    ModelSpec spec;
    std::optional<Eigen::Index> n;
    std::string input;
    std::string output;

    auto* analyze = app.add_subcommand("analyze", "Spectrum, signature, Gram matrix and dual basis");
    auto* verify = app.add_subcommand("verify", "Check every relation; exit 1 on any applicable failure");
    auto* bench = app.add_subcommand("bench", "Time dual construction by inversion vs by sign flip");
    auto* generate = app.add_subcommand("generate", "Write a model's (H, P) in the matrix interchange format");
    for (auto* sub : {analyze, verify, bench, generate}) sub->fallthrough();

    app.add_option("--model", model_name, "Model family")
        ->check(CLI::IsMember({"two-level", "lattice-chain", "discretized-schrodinger", "random-pt"}));
    app.add_option("--g", spec.g, "Two-level gain/loss strength");
    app.add_option("--b", spec.b, "Two-level coupling");
    app.add_option("--n", n, "Dimension (chain sites, grid points, random-pt size)")->check(CLI::PositiveNumber);
    app.add_option("--gamma", spec.gamma, "Chain gain/loss strength");
    app.add_option("--t", spec.t, "Chain hopping");
    app.add_option("--gain-sites", spec.gain_sites, "Chain sites carrying +i gamma")->delimiter(',');
    app.add_option("--epsilon", spec.epsilon, "Exponent in x^2 (i x)^epsilon");
    app.add_option("--L", spec.L, "Grid half-width");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--scale", spec.scale, "random-pt non-Hermitian amplitude");
    app.add_flag("--unbroken-only", spec.unbroken_only, "random-pt: redraw until the spectrum is real");
    app.add_option("--input", input, "Matrix interchange file (JSON)");
    app.add_option("--output", output, "Output path (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol-eig", cfg.tolerances.tol_eig, "Eigenpair relative residual tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-sig", cfg.tolerances.tol_sig, "Signature residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--dims", cfg.dims, "Benchmark dimensions, comma separated")->delimiter(',');
    app.add_option("--reps", cfg.reps, "Benchmark repetitions")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (analyze->parsed()) cfg.command = Command::Analyze;
        if (verify->parsed()) cfg.command = Command::Verify;
        if (bench->parsed()) cfg.command = Command::Bench;
        if (generate->parsed()) cfg.command = Command::Generate;
        cfg.format = format == "text" ? Format::Text : Format::Json;
        if (!output.empty()) cfg.output = output;
        if (!input.empty()) cfg.input = input;
        if (!model_name.empty()) {
            spec.family = parse_model_family(model_name);
            spec.seed = cfg.seed;
            if (n) spec.n = *n;
            cfg.model = spec;
        }

        switch (cfg.command) {
            case Command::Bench:
                if (cfg.dims.empty()) throw UsageError("bench requires a non-empty --dims list");
                break;
            case Command::Generate:
                if (!cfg.model) throw UsageError("generate requires --model");
                if (cfg.input) throw UsageError("generate takes --model, not --input");
                if (cfg.format != Format::Json) throw UsageError("generate only writes JSON");
                break;
            default:
                if (cfg.model.has_value() == cfg.input.has_value()) {
                    throw UsageError("exactly one of --model or --input is required");
                }
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "ptgram: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "ptgram: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "ptgram: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        switch (cfg.command) {
            case Command::Analyze: return cmd_analyze(cfg, out);
            case Command::Verify: return cmd_verify(cfg, out);
            case Command::Bench: return cmd_bench(cfg, out);
            case Command::Generate: return cmd_generate(cfg, out);
        }
    } catch (const Error& e) {
        err << "ptgram: " << e.what() << '\n';
        const bool bad_input = e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::InvalidParity ||
                               e.kind() == ErrorKind::InvalidGrid;
        return bad_input ? kUsageError : kNumericalFailure;
    } catch (const std::exception& e) {
        err << "ptgram: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kUsageError;
}

}  // namespace ptgram::cli
