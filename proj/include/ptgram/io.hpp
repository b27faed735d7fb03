#pragma once

// JSON interchange for (H, P) pairs and report/benchmark serialization.
// Complex entries are two-element [re, im] arrays; matrices are row-major
// nested arrays.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptgram/linalg.hpp"
#include "ptgram/verification.hpp"

namespace ptgram {

inline constexpr std::string_view kReportSchema = "ptgram-report/1";
inline constexpr std::string_view kBenchSchema = "ptgram-bench/1";

struct MatrixFile {
    MatrixXc h;
    MatrixXc p;
};

nlohmann::json complex_to_json(std::complex<double> z);
nlohmann::json matrix_to_json(const MatrixXc& m);
/// Columns of `basis` as a list of vectors.
nlohmann::json columns_to_json(const MatrixXc& basis);

/// Throws Error(InvalidInput) with the offending field path in the message.
MatrixXc matrix_from_json(const nlohmann::json& node, const std::string& field);

nlohmann::json matrix_file_to_json(const MatrixFile& file);
MatrixFile matrix_file_from_json(const nlohmann::json& root);
/// Parses text; JSON syntax errors are reported with their byte position.
MatrixFile parse_matrix_file(std::string_view text);
MatrixFile read_matrix_file(const std::string& path);

nlohmann::json report_to_json(const VerificationReport& report, std::string_view command);
void write_report_text(std::ostream& os, const VerificationReport& report, std::string_view command);

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows, int repetitions, std::uint64_t seed);
void write_bench_text(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace ptgram
