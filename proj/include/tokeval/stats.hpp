#pragma once

// Pearson correlation over per-model metric columns.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tokeval/error.hpp"
#include "tokeval/format.hpp"
#include "tokeval/report.hpp"

namespace tokeval {

struct MetricColumn {
    std::string name;
    std::vector<double> values; // NaN marks a missing cell
};

/// Models and named numeric columns, one value per model per column.
class MetricTable {
public:
    MetricTable() = default;

    MetricTable(std::vector<std::string> models, std::vector<MetricColumn> columns)
        : models_(std::move(models)), columns_(std::move(columns)) {
        for (const auto& c : columns_) {
            if (c.values.size() != models_.size()) {
                throw Error("column '" + c.name + "' has " + std::to_string(c.values.size()) + " values for " +
                            std::to_string(models_.size()) + " models");
            }
        }
        for (std::size_t i = 0; i < columns_.size(); ++i)
            for (std::size_t k = 0; k < i; ++k)
                if (columns_[i].name == columns_[k].name) throw Error("duplicate column '" + columns_[i].name + "'");
    }

    static MetricTable from_reports(const std::vector<EvalReport>& reports) {
        return from_csv(reports_to_csv(reports));
    }

    /// First column holds model names; every other column must be numeric
    /// (empty cells become NaN).
    static MetricTable from_csv(std::string_view text) {
        const auto rows = csv::parse(text);
        if (rows.empty()) throw Error("CSV is empty");
        const auto& header = rows.front();
        if (header.size() < 2) throw Error("CSV needs a model column and at least one metric column");
        std::vector<std::string> models;
        std::vector<MetricColumn> columns;
        for (std::size_t c = 1; c < header.size(); ++c) columns.push_back({header[c], {}});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() != header.size()) {
                throw Error("CSV row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " cells, expected " +
                            std::to_string(header.size()));
            }
            models.push_back(row[0]);
            for (std::size_t c = 1; c < row.size(); ++c) {
                try {
                    columns[c - 1].values.push_back(parse_number(row[c]));
                } catch (const Error& e) {
                    throw Error("CSV row " + std::to_string(r + 1) + ", column '" + header[c] + "': " + e.what());
                }
            }
        }
        return MetricTable(std::move(models), std::move(columns));
    }

    const std::vector<std::string>& models() const noexcept { return models_; }
    const std::vector<MetricColumn>& columns() const noexcept { return columns_; }

    bool has_column(std::string_view name) const { return find(name) != nullptr; }

    const MetricColumn& column(std::string_view name) const {
        if (const auto* c = find(name)) return *c;
        throw Error("no column named '" + std::string(name) + "'");
    }

    /// Keeps the named columns, in the given order.
    MetricTable select(const std::vector<std::string>& names) const {
        std::vector<MetricColumn> cols;
        for (const auto& n : names) cols.push_back(column(n));
        return MetricTable(models_, std::move(cols));
    }

    /// Drops columns that have any missing cell.
    MetricTable complete_columns() const {
        std::vector<MetricColumn> cols;
        for (const auto& c : columns_) {
            if (std::none_of(c.values.begin(), c.values.end(), [](double v) { return std::isnan(v); })) cols.push_back(c);
        }
        return MetricTable(models_, std::move(cols));
    }

private:
    const MetricColumn* find(std::string_view name) const {
        for (const auto& c : columns_)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::vector<std::string> models_;
    std::vector<MetricColumn> columns_;
};

/// Product-moment correlation. Two-pass mean, long double accumulation.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error("length mismatch (" + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) throw Error("need at least 2 observations");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error("missing or non-finite value");
    }
    const auto n = static_cast<long double>(x.size());
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double dx = x[i] - mx;
        const long double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw Error("zero variance");
    const long double r = sxy / std::sqrt(sxx * syy);
    return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> r;

    double at(std::string_view a, std::string_view b) const {
        return r[index(a)][index(b)];
    }

    std::size_t index(std::string_view label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw Error("no label '" + std::string(label) + "' in correlation matrix");
    }
};

inline CorrelationMatrix correlation_matrix(const MetricTable& table) {
    if (table.models().size() < 2) throw Error("correlation needs at least 2 models");
    const auto& cols = table.columns();
    for (const auto& c : cols) {
        if (std::any_of(c.values.begin(), c.values.end(), [](double v) { return !std::isfinite(v); })) {
            throw Error("column '" + c.name + "' has missing values");
        }
        if (std::adjacent_find(c.values.begin(), c.values.end(), std::not_equal_to<>()) == c.values.end()) {
            throw Error("column '" + c.name + "' has zero variance");
        }
    }
    CorrelationMatrix m;
    for (const auto& c : cols) m.labels.push_back(c.name);
    m.r.assign(cols.size(), std::vector<double>(cols.size(), 1.0));
    for (std::size_t i = 0; i < cols.size(); ++i) {
        for (std::size_t k = i + 1; k < cols.size(); ++k) {
            const double r = pearson(cols[i].values, cols[k].values);
            m.r[i][k] = r;
            m.r[k][i] = r;
        }
    }
    return m;
}

/// Models ordered by `key`, highest first; ties by name. Missing values last.
inline std::vector<std::string> rank_models(const MetricTable& table, std::string_view key) {
    const auto& values = table.column(key).values;
    std::vector<std::size_t> order(table.models().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const bool na = std::isnan(values[a]);
        const bool nb = std::isnan(values[b]);
        if (na != nb) return nb;
        if (!na && values[a] != values[b]) return values[a] > values[b];
        return table.models()[a] < table.models()[b];
    });
    std::vector<std::string> out;
    for (std::size_t i : order) out.push_back(table.models()[i]);
    return out;
}

inline std::string to_csv(const CorrelationMatrix& m) {
    std::vector<std::string> header{""};
    header.insert(header.end(), m.labels.begin(), m.labels.end());
    std::string out = csv::join_row(header);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        std::vector<std::string> row{m.labels[i]};
        for (double v : m.r[i]) row.push_back(format_shortest(v));
        out += csv::join_row(row);
    }
    return out;
}

inline nlohmann::json to_json(const CorrelationMatrix& m) {
    return {{"labels", m.labels}, {"r", m.r}};
}

inline CorrelationMatrix correlation_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty()) throw Error("correlation CSV is empty");
    CorrelationMatrix m;
    m.labels.assign(rows.front().begin() + 1, rows.front().end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != m.labels.size() + 1) throw Error("correlation CSV is not square");
        std::vector<double> row;
        for (std::size_t k = 1; k < rows[i].size(); ++k) row.push_back(parse_number(rows[i][k]));
        m.r.push_back(std::move(row));
    }
    if (m.r.size() != m.labels.size()) throw Error("correlation CSV is not square");
    return m;
}

} // namespace tokeval
