#pragma once

// Number formatting and a minimal RFC 4180 CSV reader/writer.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tokeval/error.hpp"

namespace tokeval {

/// plain: 256000 / 27.20   tr: 256.000 / 27,20 (as printed in Turkish tables)
enum class NumberStyle { plain, tr };

inline NumberStyle parse_number_style(std::string_view s) {
    if (s == "plain") return NumberStyle::plain;
    if (s == "tr") return NumberStyle::tr;
    throw Error("unknown number style '" + std::string(s) + "' (expected plain or tr)");
}

inline std::string format_fixed(double v, int decimals, NumberStyle style = NumberStyle::plain) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (style == NumberStyle::plain) return s;

    const bool neg = !s.empty() && s.front() == '-';
    if (neg) s.erase(0, 1);
    auto dot = s.find('.');
    std::string int_part = s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    std::string grouped;
    for (std::size_t i = 0; i < int_part.size(); ++i) {
        if (i > 0 && (int_part.size() - i) % 3 == 0) grouped.push_back('.');
        grouped.push_back(int_part[i]);
    }
    std::string out = (neg ? "-" : "") + grouped;
    if (!frac.empty()) out += "," + frac;
    return out;
}

inline std::string format_count(unsigned long long n, NumberStyle style = NumberStyle::plain) {
    return format_fixed(static_cast<double>(n), 0, style);
}

/// Shortest representation that round-trips.
inline std::string format_shortest(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw InvariantError("to_chars failed");
    return std::string(buf, ptr);
}

/// Parses a plain-style number; nullopt-like NaN for an empty cell.
inline double parse_number(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) return std::nan("");
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("not a number: '" + std::string(s) + "'");
    return v;
}

namespace csv {

inline std::string escape(std::string_view cell) {
    if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

inline std::string join_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(cells[i]);
    }
    out.push_back('\n');
    return out;
}

/// Parses CSV text into rows of cells. Blank lines are skipped.
inline std::vector<std::vector<std::string>> parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool any = false;
    auto end_row = [&] {
        if (any || !cell.empty() || !row.empty()) {
            row.push_back(std::move(cell));
            rows.push_back(std::move(row));
        }
        row.clear();
        cell.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"': quoted = true; any = true; break;
        case ',': row.push_back(std::move(cell)); cell.clear(); any = true; break;
        case '\r': break;
        case '\n': end_row(); break;
        default: cell.push_back(c); break;
        }
    }
    if (quoted) throw Error("CSV: unterminated quoted field");
    end_row();
    return rows;
}

} // namespace csv

} // namespace tokeval
