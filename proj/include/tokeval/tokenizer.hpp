#pragma once

// Tokenizer models: byte-level BPE and greedy longest-match.
//
// File schema (UTF-8 JSON):
//   {"kind": "byte-bpe" | "greedy",
//    "marker": "byte-level-space" | "underscore-prefix" | "none",
//    "vocab": {"<token>": <id>, ...},
//    "merges": ["<sym> <sym>", ...]}        // byte-bpe only, priority order

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tokeval/byte_level.hpp"
#include "tokeval/error.hpp"
#include "tokeval/pretokenize.hpp"
#include "tokeval/utf8.hpp"

namespace tokeval {

using TokenId = std::int64_t;

/// Id carried by greedy "unknown character" records.
inline constexpr TokenId kUnknownId = -1;

enum class ModelKind { byte_bpe, greedy };
enum class Marker { byte_level_space, underscore_prefix, none };

inline constexpr std::string_view kUnderscoreMarker = "\xE2\x96\x81"; // U+2581

inline std::string_view to_string(ModelKind k) noexcept {
    return k == ModelKind::byte_bpe ? "byte-bpe" : "greedy";
}

inline std::string_view to_string(Marker m) noexcept {
    switch (m) {
    case Marker::byte_level_space: return "byte-level-space";
    case Marker::underscore_prefix: return "underscore-prefix";
    case Marker::none: return "none";
    }
    return "none";
}

/// One element of an encoded stream. `unknown` holds the raw bytes of the
/// character when the greedy encoder found no vocabulary match.
struct Token {
    TokenId id = kUnknownId;
    std::string unknown;

    bool is_unknown() const noexcept { return id == kUnknownId; }
    friend bool operator==(const Token&, const Token&) = default;
};

struct DecodedToken {
    TokenId id = kUnknownId;
    std::string raw;
    std::optional<std::string> surface; // present iff the payload is valid UTF-8
    bool word_initial = false;
};

class TokenizerModel {
public:
    static TokenizerModel from_json(const nlohmann::json& j) {
        if (!j.is_object()) throw Error("tokenizer file must be a JSON object");
        TokenizerModel m;

        const std::string kind = j.value("kind", "");
        if (kind == "byte-bpe") m.kind_ = ModelKind::byte_bpe;
        else if (kind == "greedy") m.kind_ = ModelKind::greedy;
        else throw Error("unknown tokenizer kind '" + kind + "'");

        const std::string marker = j.value("marker", m.kind_ == ModelKind::byte_bpe ? "byte-level-space" : "none");
        if (marker == "byte-level-space") m.marker_ = Marker::byte_level_space;
        else if (marker == "underscore-prefix") m.marker_ = Marker::underscore_prefix;
        else if (marker == "none") m.marker_ = Marker::none;
        else throw Error("unknown marker '" + marker + "'");
        if (m.kind_ == ModelKind::byte_bpe && m.marker_ == Marker::underscore_prefix) {
            throw Error("byte-bpe models use the byte-level-space marker or none");
        }

        auto vocab = j.find("vocab");
        if (vocab == j.end() || !vocab->is_object()) throw Error("tokenizer file has no \"vocab\" object");
        m.id_to_token_.assign(vocab->size(), std::string());
        std::vector<bool> assigned(vocab->size(), false);
        for (auto it = vocab->begin(); it != vocab->end(); ++it) {
            if (!it.value().is_number_integer()) throw Error("vocab entry '" + it.key() + "' has a non-integer id");
            const auto id = it.value().get<TokenId>();
            if (id < 0 || static_cast<std::size_t>(id) >= assigned.size()) {
                throw Error("vocab id " + std::to_string(id) + " for '" + it.key() + "' is outside [0, " +
                            std::to_string(assigned.size()) + "); ids must be dense");
            }
            if (assigned[id]) throw Error("duplicate vocab id " + std::to_string(id));
            if (it.key().empty()) throw Error("empty vocab entry");
            if (m.uses_byte_table() && !byte_level::decode_symbols(it.key())) {
                throw Error("vocab entry '" + it.key() + "' is not in the byte-level alphabet");
            }
            assigned[id] = true;
            m.id_to_token_[id] = it.key();
            m.vocab_.emplace(it.key(), id);
            m.max_token_bytes_ = std::max(m.max_token_bytes_, it.key().size());
        }

        if (auto merges = j.find("merges"); merges != j.end() && !merges->empty()) {
            if (m.kind_ != ModelKind::byte_bpe) throw Error("merges are only valid for byte-bpe models");
            if (!merges->is_array()) throw Error("\"merges\" must be an array");
            std::size_t rank = 0;
            for (const auto& entry : *merges) {
                if (!entry.is_string()) throw Error("merge #" + std::to_string(rank) + " is not a string");
                const auto& s = entry.get_ref<const std::string&>();
                const auto sep = s.find(' ');
                if (sep == std::string::npos || sep == 0 || sep + 1 == s.size() || s.find(' ', sep + 1) != std::string::npos) {
                    throw Error("malformed merge '" + s + "'");
                }
                std::string left = s.substr(0, sep);
                std::string right = s.substr(sep + 1);
                for (const auto& sym : {left, right, left + right}) {
                    if (!m.vocab_.contains(sym)) throw Error("merge '" + s + "' references '" + sym + "', which is not in the vocabulary");
                }
                // The first occurrence of a pair keeps its priority.
                m.merges_.emplace(std::make_pair(std::move(left), std::move(right)), rank);
                ++rank;
            }
        }
        return m;
    }

    static TokenizerModel load(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open tokenizer file '" + path.string() + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error("'" + path.string() + "': malformed JSON (" + e.what() + ")");
        }
        try {
            return from_json(j);
        } catch (const Error& e) {
            throw Error("'" + path.string() + "': " + e.what());
        }
    }

    ModelKind kind() const noexcept { return kind_; }
    Marker marker() const noexcept { return marker_; }
    std::size_t vocab_size() const noexcept { return id_to_token_.size(); }
    std::size_t merge_count() const noexcept { return merges_.size(); }

    /// True when vocabulary strings are byte-level symbols.
    bool uses_byte_table() const noexcept {
        return kind_ == ModelKind::byte_bpe || marker_ == Marker::byte_level_space;
    }

    std::optional<TokenId> find(std::string_view token) const {
        auto it = vocab_.find(std::string(token));
        if (it == vocab_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& token(TokenId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
            throw Error("token id " + std::to_string(id) + " out of range");
        }
        return id_to_token_[static_cast<std::size_t>(id)];
    }

    std::optional<std::size_t> merge_rank(const std::string& left, const std::string& right) const {
        auto it = merges_.find({left, right});
        if (it == merges_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t max_token_bytes() const noexcept { return max_token_bytes_; }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept {
            const std::size_t h = std::hash<std::string>{}(p.first);
            return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
        }
    };

    ModelKind kind_ = ModelKind::greedy;
    Marker marker_ = Marker::none;
    std::unordered_map<std::string, TokenId> vocab_;
    std::vector<std::string> id_to_token_;
    std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairHash> merges_;
    std::size_t max_token_bytes_ = 0;
};

inline TokenizerModel load_tokenizer(const std::filesystem::path& path) { return TokenizerModel::load(path); }

namespace detail {

inline std::vector<std::string> split_scalars(std::string_view s) {
    std::vector<std::string> out;
    while (!s.empty()) {
        auto d = utf8::decode_one(s);
        const std::size_t len = d ? d->length : 1;
        out.emplace_back(s.substr(0, len));
        s.remove_prefix(len);
    }
    return out;
}

inline std::string replace_all(std::string_view s, std::string_view from, std::string_view to) {
    std::string out;
    std::size_t pos = 0;
    while (true) {
        auto hit = s.find(from, pos);
        if (hit == std::string_view::npos) break;
        out.append(s.substr(pos, hit - pos));
        out.append(to);
        pos = hit + from.size();
    }
    out.append(s.substr(pos));
    return out;
}

} // namespace detail

/// Byte-level BPE over one pre-tokenized piece. Repeatedly merges the
/// adjacent pair with the lowest merge rank (leftmost on ties).
inline std::vector<TokenId> bpe_encode(const TokenizerModel& model, std::string_view piece) {
    if (model.kind() != ModelKind::byte_bpe) throw Error("bpe_encode requires a byte-bpe model");
    std::vector<std::string> symbols = detail::split_scalars(byte_level::encode_bytes(piece));

    while (symbols.size() > 1) {
        std::size_t best_rank = 0;
        std::size_t best_pos = symbols.size();
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            auto rank = model.merge_rank(symbols[i], symbols[i + 1]);
            if (rank && (best_pos == symbols.size() || *rank < best_rank)) {
                best_rank = *rank;
                best_pos = i;
            }
        }
        if (best_pos == symbols.size()) break;
        symbols[best_pos] += symbols[best_pos + 1];
        symbols.erase(symbols.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
    }

    std::vector<TokenId> ids;
    ids.reserve(symbols.size());
    for (const auto& sym : symbols) {
        auto id = model.find(sym);
        if (!id) throw Error("symbol '" + sym + "' is not in the vocabulary");
        ids.push_back(*id);
    }
    return ids;
}

/// Greedy longest-prefix match over one piece. Characters with no match
/// become unknown records carrying their original bytes.
inline std::vector<Token> greedy_encode(const TokenizerModel& model, std::string_view piece) {
    if (model.kind() != ModelKind::greedy) throw Error("greedy_encode requires a greedy model");

    std::string mapped;
    switch (model.marker()) {
    case Marker::byte_level_space: mapped = byte_level::encode_bytes(piece); break;
    case Marker::underscore_prefix: mapped = detail::replace_all(piece, " ", kUnderscoreMarker); break;
    case Marker::none: mapped = std::string(piece); break;
    }

    auto original_bytes = [&](std::string_view sym) -> std::string {
        switch (model.marker()) {
        case Marker::byte_level_space: return byte_level::decode_symbols(sym).value_or(std::string(sym));
        case Marker::underscore_prefix: return detail::replace_all(sym, kUnderscoreMarker, " ");
        case Marker::none: break;
        }
        return std::string(sym);
    };

    std::vector<Token> out;
    std::string_view rest = mapped;
    std::vector<std::size_t> ends;
    while (!rest.empty()) {
        ends.clear();
        std::size_t pos = 0;
        const std::size_t limit = std::min(rest.size(), model.max_token_bytes());
        while (pos < rest.size()) {
            auto d = utf8::decode_one(rest.substr(pos));
            pos += d ? d->length : 1;
            if (pos > limit) break;
            ends.push_back(pos);
        }
        bool matched = false;
        for (auto it = ends.rbegin(); it != ends.rend(); ++it) {
            if (auto id = model.find(rest.substr(0, *it))) {
                out.push_back({*id, {}});
                rest.remove_prefix(*it);
                matched = true;
                break;
            }
        }
        if (!matched) {
            auto d = utf8::decode_one(rest);
            const std::size_t len = d ? d->length : 1;
            out.push_back({kUnknownId, original_bytes(rest.substr(0, len))});
            rest.remove_prefix(len);
        }
    }
    return out;
}

/// Pre-tokenizes `text` and encodes every piece in order.
inline std::vector<Token> encode(const TokenizerModel& model, std::string_view text) {
    std::vector<Token> out;
    for (std::string_view piece : pretokenize(text)) {
        if (model.kind() == ModelKind::byte_bpe) {
            for (TokenId id : bpe_encode(model, piece)) out.push_back({id, {}});
        } else {
            auto toks = greedy_encode(model, piece);
            std::move(toks.begin(), toks.end(), std::back_inserter(out));
        }
    }
    return out;
}

inline std::vector<TokenId> ids_of(const std::vector<Token>& tokens) {
    std::vector<TokenId> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) ids.push_back(t.id);
    return ids;
}

namespace detail {

inline DecodedToken finish_decoded(TokenId id, std::string raw, bool word_initial) {
    DecodedToken out{id, std::move(raw), std::nullopt, word_initial};
    std::string_view payload = out.raw;
    if (word_initial) payload.remove_prefix(1);
    if (utf8::is_valid(payload)) out.surface = std::string(payload);
    return out;
}

} // namespace detail

inline DecodedToken decode_token(const TokenizerModel& model, TokenId id) {
    const std::string& tok = model.token(id);
    if (model.uses_byte_table()) {
        auto raw = byte_level::decode_symbols(tok);
        if (!raw) throw InvariantError("vocab entry '" + tok + "' escaped load-time validation");
        const bool initial = model.marker() == Marker::byte_level_space && !raw->empty() && raw->front() == ' ';
        return detail::finish_decoded(id, std::move(*raw), initial);
    }
    if (model.marker() == Marker::underscore_prefix) {
        const bool initial = tok.starts_with(kUnderscoreMarker);
        return detail::finish_decoded(id, detail::replace_all(tok, kUnderscoreMarker, " "), initial);
    }
    return detail::finish_decoded(id, tok, false);
}

inline DecodedToken decode_token(const TokenizerModel& model, const Token& token) {
    if (token.is_unknown()) return detail::finish_decoded(kUnknownId, token.unknown, false);
    return decode_token(model, token.id);
}

/// Concatenated raw bytes of a token stream.
inline std::string decode_bytes(const TokenizerModel& model, const std::vector<Token>& tokens) {
    std::string out;
    for (const auto& t : tokens) out += decode_token(model, t).raw;
    return out;
}

} // namespace tokeval
