#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokeval/utf8.hpp"

namespace tokeval {

/// Splits text into runs of letters, digits, whitespace and other
/// characters. A single U+0020 directly before a non-whitespace run is
/// moved onto that run. Pieces are views into `text` and concatenate back
/// to it exactly. Invalid bytes are treated as "other".
inline std::vector<std::string_view> pretokenize(std::string_view text) {
    using utf8::CharClass;

    struct Run {
        std::size_t begin;
        std::size_t end;
        CharClass cls;
    };
    std::vector<Run> runs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto d = utf8::decode_one(text.substr(pos));
        const std::size_t len = d ? d->length : 1;
        const CharClass cls = d ? utf8::classify(d->scalar) : CharClass::other;
        if (!runs.empty() && runs.back().cls == cls) {
            runs.back().end = pos + len;
        } else {
            runs.push_back({pos, pos + len, cls});
        }
        pos += len;
    }

    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        Run& ws = runs[i];
        if (ws.cls != CharClass::whitespace || text[ws.end - 1] != ' ') continue;
        --ws.end;
        --runs[i + 1].begin;
    }

    std::vector<std::string_view> pieces;
    pieces.reserve(runs.size());
    for (const Run& r : runs) {
        if (r.end > r.begin) pieces.push_back(text.substr(r.begin, r.end - r.begin));
    }
    return pieces;
}

} // namespace tokeval
