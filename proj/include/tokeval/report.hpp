#pragma once

// EvalReport serialization: JSON (full precision), CSV (one row per model,
// benchmark-table column order) and a Markdown table with one column per
// model.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tokeval/error.hpp"
#include "tokeval/format.hpp"
#include "tokeval/metrics.hpp"

namespace tokeval {

inline nlohmann::json to_json(const EvalReport& r) {
    auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(); };
    nlohmann::json j;
    j["model_name"] = r.model_name;
    j["params_b"] = opt(r.params_b);
    j["external_scores"] = nlohmann::json::object();
    for (const auto& [k, v] : r.external_scores) j["external_scores"][k] = v;
    j["vocab_size"] = r.vocab_size;
    j["total_tokens"] = r.total_tokens;
    j["unique_tokens"] = r.unique_tokens;
    j["processing_time_s"] = opt(r.processing_time_s);
    j["pct_tr"] = r.pct_tr;
    j["pct_pure"] = r.pct_pure;
    j["fertility"] = opt(r.fertility);
    return j;
}

inline EvalReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("report must be a JSON object");
    auto opt = [&](const char* key) -> std::optional<double> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_number()) throw Error(std::string("report field '") + key + "' must be a number");
        return it->get<double>();
    };
    auto count = [&](const char* key) -> std::size_t {
        auto it = j.find(key);
        if (it == j.end() || !it->is_number_unsigned()) throw Error(std::string("report field '") + key + "' must be a non-negative integer");
        return it->get<std::size_t>();
    };
    auto number = [&](const char* key) -> double {
        auto v = opt(key);
        if (!v) throw Error(std::string("report field '") + key + "' is required");
        return *v;
    };

    EvalReport r;
    if (!j.contains("model_name") || !j["model_name"].is_string()) throw Error("report field 'model_name' must be a string");
    r.model_name = j["model_name"].get<std::string>();
    r.params_b = opt("params_b");
    if (auto it = j.find("external_scores"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw Error("'external_scores' must be an object");
        for (auto s = it->begin(); s != it->end(); ++s) {
            if (!s.value().is_number()) throw Error("external score '" + s.key() + "' must be a number");
            r.external_scores[s.key()] = s.value().get<double>();
        }
    }
    r.vocab_size = count("vocab_size");
    r.total_tokens = count("total_tokens");
    r.unique_tokens = count("unique_tokens");
    r.processing_time_s = opt("processing_time_s");
    r.pct_tr = number("pct_tr");
    r.pct_pure = number("pct_pure");
    r.fertility = opt("fertility");
    return r;
}

/// Union of external score names, sorted.
inline std::vector<std::string> score_names(const std::vector<EvalReport>& reports) {
    std::set<std::string> names;
    for (const auto& r : reports)
        for (const auto& [k, v] : r.external_scores) names.insert(k);
    return {names.begin(), names.end()};
}

/// CSV column names in benchmark-table order.
inline std::vector<std::string> csv_columns(const std::vector<EvalReport>& reports) {
    std::vector<std::string> cols{"model_name", "params_b"};
    for (const auto& s : score_names(reports)) cols.push_back(s);
    for (const char* c : {"vocab_size", "total_tokens", "processing_time_s", "unique_tokens", "pct_tr", "pct_pure", "fertility"}) {
        cols.emplace_back(c);
    }
    return cols;
}

inline std::string reports_to_csv(const std::vector<EvalReport>& reports) {
    const auto scores = score_names(reports);
    std::string out = csv::join_row(csv_columns(reports));
    auto opt = [](const std::optional<double>& v) { return v ? format_shortest(*v) : std::string(); };
    for (const auto& r : reports) {
        std::vector<std::string> row{r.model_name, opt(r.params_b)};
        for (const auto& s : scores) {
            auto it = r.external_scores.find(s);
            row.push_back(it == r.external_scores.end() ? std::string() : format_shortest(it->second));
        }
        row.push_back(std::to_string(r.vocab_size));
        row.push_back(std::to_string(r.total_tokens));
        row.push_back(opt(r.processing_time_s));
        row.push_back(std::to_string(r.unique_tokens));
        row.push_back(format_shortest(r.pct_tr));
        row.push_back(format_shortest(r.pct_pure));
        row.push_back(opt(r.fertility));
        out += csv::join_row(row);
    }
    return out;
}

inline std::string reports_to_json(const std::vector<EvalReport>& reports) {
    if (reports.size() == 1) return to_json(reports.front()).dump(2) + "\n";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

/// Row label used in Markdown tables for a CSV column name.
inline std::string column_label(std::string_view column) {
    if (column == "params_b") return "Model Parameters (B)";
    if (column == "vocab_size") return "Vocabulary Size";
    if (column == "total_tokens") return "Token Count";
    if (column == "processing_time_s") return "Processing Time (s)";
    if (column == "unique_tokens") return "Unique Token Count";
    if (column == "pct_tr") return "TR %";
    if (column == "pct_pure") return "Pure %";
    if (column == "fertility") return "Fertility (tokens/word)";
    std::string upper(column);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    return upper + " Score (%)";
}

/// Metric-per-row Markdown table: counts as integers, parameters with one
/// decimal, fertility with three, everything else with two.
inline std::string reports_to_markdown(const std::vector<EvalReport>& reports, NumberStyle style = NumberStyle::plain) {
    const auto scores = score_names(reports);
    std::string out = "| Metric |";
    for (const auto& r : reports) out += " " + r.model_name + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < reports.size(); ++i) out += "---|";
    out += "\n";

    auto row = [&](const std::string& label, auto cell) {
        out += "| " + label + " |";
        for (const auto& r : reports) out += " " + cell(r) + " |";
        out += "\n";
    };
    auto opt = [&](const std::optional<double>& v, int decimals) { return v ? format_fixed(*v, decimals, style) : std::string("-"); };

    row(column_label("params_b"), [&](const EvalReport& r) { return opt(r.params_b, 1); });
    for (const auto& s : scores) {
        row(column_label(s), [&](const EvalReport& r) {
            auto it = r.external_scores.find(s);
            return it == r.external_scores.end() ? std::string("-") : format_fixed(it->second, 2, style);
        });
    }
    row(column_label("vocab_size"), [&](const EvalReport& r) { return format_count(r.vocab_size, style); });
    row(column_label("total_tokens"), [&](const EvalReport& r) { return format_count(r.total_tokens, style); });
    row(column_label("processing_time_s"), [&](const EvalReport& r) { return opt(r.processing_time_s, 2); });
    row(column_label("unique_tokens"), [&](const EvalReport& r) { return format_count(r.unique_tokens, style); });
    row(column_label("pct_tr"), [&](const EvalReport& r) { return format_fixed(r.pct_tr, 2, style); });
    row(column_label("pct_pure"), [&](const EvalReport& r) { return format_fixed(r.pct_pure, 2, style); });
    row(column_label("fertility"), [&](const EvalReport& r) { return opt(r.fertility, 3); });
    return out;
}

enum class ReportFormat { json, csv, md };

inline ReportFormat parse_report_format(std::string_view s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "md") return ReportFormat::md;
    throw Error("unknown format '" + std::string(s) + "' (expected json, csv or md)");
}

inline std::string render_reports(const std::vector<EvalReport>& reports, ReportFormat format,
                                  NumberStyle style = NumberStyle::plain) {
    switch (format) {
    case ReportFormat::json: return reports_to_json(reports);
    case ReportFormat::csv: return reports_to_csv(reports);
    case ReportFormat::md: return reports_to_markdown(reports, style);
    }
    return {};
}

/// A set of pre-computed reports, e.g. a published benchmark table. When
/// the corpus word count is given, missing fertility values are derived
/// from it.
struct ReportFixture {
    std::optional<std::size_t> char_count;
    std::optional<std::size_t> word_count;
    std::vector<EvalReport> reports;
};

inline ReportFixture fixture_from_json(const nlohmann::json& j) {
    ReportFixture f;
    if (auto c = j.find("corpus"); c != j.end() && c->is_object()) {
        if (c->contains("char_count")) f.char_count = (*c)["char_count"].get<std::size_t>();
        if (c->contains("word_count")) f.word_count = (*c)["word_count"].get<std::size_t>();
    }
    auto reports = j.find("reports");
    if (reports == j.end() || !reports->is_array()) throw Error("fixture has no \"reports\" array");
    for (const auto& r : *reports) {
        auto rep = report_from_json(r);
        if (!rep.fertility && f.word_count && *f.word_count > 0) rep.fertility = fertility(rep.total_tokens, *f.word_count);
        f.reports.push_back(std::move(rep));
    }
    return f;
}

inline ReportFixture load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    try {
        return fixture_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path.string() + "': " + e.what());
    }
}

} // namespace tokeval
