#include "clens/io.hpp"

#include "clens/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace clens {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

LabeledDataset parse_matrix_csv(const std::string& text, const CsvOptions& options, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::optional<std::size_t> expected;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_pending = options.has_header;

    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }

        const auto fields = split_fields(line);
        if (!expected) expected = fields.size();
        if (fields.size() != *expected) {
            std::ostringstream msg;
            msg << source << ": row " << line_no << ": expected " << *expected << " fields, got " << fields.size();
            throw ValidationError(msg.str());
        }
        if (options.label_column && *options.label_column >= fields.size()) {
            std::ostringstream msg;
            msg << source << ": label column " << *options.label_column << " out of range for " << fields.size()
                << " fields";
            throw ValidationError(msg.str());
        }

        std::vector<double> values;
        values.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto cell = trim(fields[c]);
            if (options.label_column && c == *options.label_column) {
                int label = 0;
                auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), label);
                if (ec != std::errc() || p != cell.data() + cell.size()) {
                    std::ostringstream msg;
                    msg << source << ": row " << line_no << ", column " << c + 1 << ": label '" << cell
                        << "' is not an integer";
                    throw ValidationError(msg.str());
                }
                labels.push_back(label);
                continue;
            }
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || p != cell.data() + cell.size() || !std::isfinite(v)) {
                std::ostringstream msg;
                msg << source << ": row " << line_no << ", column " << c + 1 << ": cannot parse '" << cell
                    << "' as a finite number";
                throw ValidationError(msg.str());
            }
            values.push_back(v);
        }
        rows.push_back(std::move(values));
    }

    if (rows.empty() || (rows.front().empty() && labels.empty())) throw ValidationError(source + ": empty file");

    LabeledDataset out;
    out.name = source;
    out.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            out.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    out.labels = std::move(labels);
    return out;
}

LabeledDataset read_matrix_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_csv(buffer.str(), options, path.string());
}

std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header) {
    std::string out;
    out.reserve(static_cast<std::size_t>(m.size()) * 24 + 64);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out.push_back(',');
        out += header[i];
    }
    if (!header.empty()) out.push_back('\n');
    char buf[40];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out.push_back(',');
            auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), m(r, c), std::chars_format::general, 17);
            out.append(buf, p);
        }
        out.push_back('\n');
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m, const std::vector<std::string>& header) {
    write_text_atomic(path, format_matrix_csv(m, header));
}

nlohmann::json alpha_to_json(double alpha) {
    if (is_infinite_alpha(alpha)) return "inf";
    return alpha;
}

nlohmann::json pairs_to_json(const std::vector<VariancePair>& pairs) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pairs) arr.push_back({p.target_var, p.background_var});
    return arr;
}

void RunReport::validate() const {
    if (variance_pairs.size() > alphas.size()) {
        throw ValidationError("run report: variance pairs listed for alphas that are not in the alpha list");
    }
    for (const auto& [phase, ms] : timing_ms) {
        if (!(ms >= 0.0)) throw ValidationError("run report: negative timing for phase " + phase);
    }
}

nlohmann::json RunReport::to_json() const {
    validate();
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["parameters"] = parameters;
    auto alpha_arr = nlohmann::json::array();
    for (double a : alphas) alpha_arr.push_back(alpha_to_json(a));
    j["alphas"] = alpha_arr;
    auto pair_arr = nlohmann::json::array();
    for (const auto& per_alpha : variance_pairs) pair_arr.push_back(pairs_to_json(per_alpha));
    j["variance_pairs"] = pair_arr;
    j["medoid_alphas"] = medoid_alphas;
    j["cluster_labels"] = cluster_labels;
    j["timing_ms"] = timing_ms;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    for (const auto& [key, value] : extra.items()) j[key] = value;
    return j;
}

}  // namespace clens
