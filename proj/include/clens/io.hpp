#pragma once

// CSV matrices, atomic file output and the JSON run report.

#include "clens/cpca.hpp"
#include "clens/matrix.hpp"
#include "clens/synth.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clens {

struct CsvOptions {
    bool has_header = false;
    /// 0-based column holding integer labels; removed from the returned data.
    std::optional<std::size_t> label_column;
};

/// Comma-separated numeric rows. Errors name the 1-based line and column.
LabeledDataset parse_matrix_csv(const std::string& text, const CsvOptions& options = {},
                                const std::string& source = "csv");
LabeledDataset read_matrix_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// One row per line, 17 significant digits, optional header line.
std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header = {});

/// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& contents);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m, const std::vector<std::string>& header = {});

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<double> alphas;
    /// One entry per alpha, each holding the k component variance pairs.
    std::vector<std::vector<VariancePair>> variance_pairs;
    std::vector<double> medoid_alphas;
    std::vector<int> cluster_labels;
    std::map<std::string, double> timing_ms;
    std::optional<std::uint64_t> seed;
    /// Command-specific payload merged into the top level.
    nlohmann::json extra = nlohmann::json::object();

    /// Throws unless every alpha with variance pairs is listed and timings are non-negative.
    void validate() const;
    nlohmann::json to_json() const;
};

/// Alpha as JSON: a number, or the string "inf".
nlohmann::json alpha_to_json(double alpha);
nlohmann::json pairs_to_json(const std::vector<VariancePair>& pairs);

}  // namespace clens
