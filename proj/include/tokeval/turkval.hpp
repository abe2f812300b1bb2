#pragma once

// Turkish token validation: root lexicon, affix inventory, two-way vowel
// harmony and a slot-ordered affix chain.
//
// Root TSV:   form <TAB> noun|verb|other <TAB> soft_final(0|1)
// Affix TSV:  allomorph <TAB> morpheme <TAB> slot <TAB> front|back|neutral <TAB> noun|verb|any
// Word list:  one word per line
// '#' starts a comment line in all three.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tokeval/error.hpp"
#include "tokeval/tokenizer.hpp"
#include "tokeval/utf8.hpp"

namespace tokeval::turkval {

// ---------------------------------------------------------------------------
// Characters

inline char32_t turkish_lower(char32_t cp) noexcept {
    if (cp == U'I') return U'ı';
    if (cp == U'İ') return U'i';
    return utf8::simple_lower(cp);
}

/// Lowercases with the Turkish dotted/dotless i rules. Invalid bytes are
/// copied through unchanged.
inline std::string turkish_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    while (!s.empty()) {
        auto d = utf8::decode_one(s);
        if (!d) {
            out.push_back(s.front());
            s.remove_prefix(1);
            continue;
        }
        utf8::append(out, turkish_lower(d->scalar));
        s.remove_prefix(d->length);
    }
    return out;
}

inline bool is_front_vowel(char32_t c) noexcept {
    return c == U'e' || c == U'i' || c == U'ö' || c == U'ü' || c == U'î';
}

inline bool is_back_vowel(char32_t c) noexcept {
    return c == U'a' || c == U'ı' || c == U'o' || c == U'u' || c == U'â' || c == U'û';
}

inline bool is_vowel(char32_t c) noexcept { return is_front_vowel(c) || is_back_vowel(c); }

inline bool is_turkish_letter(char32_t c) noexcept {
    if (c >= U'a' && c <= U'z') return c != U'q' && c != U'w' && c != U'x';
    switch (c) {
    case U'ç': case U'ğ': case U'ı': case U'ö': case U'ş': case U'ü':
    case U'â': case U'î': case U'û':
        return true;
    default:
        return false;
    }
}

/// True iff `s` is non-empty valid UTF-8 made only of letters.
inline bool all_letters(std::string_view s) {
    if (s.empty()) return false;
    auto scalars = utf8::decode(s);
    if (!scalars) return false;
    return std::all_of(scalars->begin(), scalars->end(), [](char32_t c) { return utf8::is_letter(c); });
}

/// Lowercased, trimmed token surface, or nullopt when the surface is
/// missing, empty or contains a non-letter.
inline std::optional<std::string> normalize_token(const DecodedToken& token) {
    if (!token.surface) return std::nullopt;
    auto scalars = utf8::decode(*token.surface);
    if (!scalars) return std::nullopt;
    auto first = std::find_if_not(scalars->begin(), scalars->end(), utf8::is_whitespace);
    auto last = std::find_if_not(scalars->rbegin(), std::make_reverse_iterator(first), utf8::is_whitespace).base();
    if (first == last) return std::nullopt;
    std::string out;
    for (auto it = first; it != last; ++it) {
        if (!utf8::is_letter(*it)) return std::nullopt;
        utf8::append(out, turkish_lower(*it));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Resources

enum class RootCategory { noun, verb, other };
enum class AffixTarget { noun, verb, any };
enum class Harmony { front, back, neutral };

inline std::string_view to_string(RootCategory c) noexcept {
    switch (c) {
    case RootCategory::noun: return "noun";
    case RootCategory::verb: return "verb";
    case RootCategory::other: return "other";
    }
    return "other";
}

inline std::string_view to_string(Harmony h) noexcept {
    switch (h) {
    case Harmony::front: return "front";
    case Harmony::back: return "back";
    case Harmony::neutral: return "neutral";
    }
    return "neutral";
}

struct RootEntry {
    std::string form;
    RootCategory category = RootCategory::noun;
    bool soft_final = false; // final p/t/k/ç voices before a vowel

    friend bool operator==(const RootEntry&, const RootEntry&) = default;
};

struct AffixEntry {
    std::string allomorph;
    std::string morpheme;
    int slot = 0;
    Harmony harmony = Harmony::neutral;
    AffixTarget attaches_to = AffixTarget::any;

    friend bool operator==(const AffixEntry&, const AffixEntry&) = default;
};

namespace detail {

struct TsvRow {
    std::size_t line;
    std::vector<std::string_view> cells;
};

inline std::vector<TsvRow> read_tsv(std::string_view content) {
    std::vector<TsvRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string_view::npos) nl = content.size();
        std::string_view line = content.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        TsvRow row{line_no, {}};
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            row.cells.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string where(std::string_view origin, std::size_t line) {
    return std::string(origin) + ":" + std::to_string(line) + ": ";
}

inline bool turkish_word(std::string_view s) {
    auto scalars = utf8::decode(s);
    if (!scalars || scalars->empty()) return false;
    return std::all_of(scalars->begin(), scalars->end(), is_turkish_letter);
}

inline bool has_vowel(std::string_view s) {
    auto scalars = utf8::decode(s);
    return scalars && std::any_of(scalars->begin(), scalars->end(), is_vowel);
}

inline std::optional<char32_t> first_scalar(std::string_view s) {
    auto d = utf8::decode_one(s);
    if (!d) return std::nullopt;
    return d->scalar;
}

/// Byte offsets of every scalar boundary after the first scalar, ending at s.size().
inline std::vector<std::size_t> scalar_ends(std::string_view s) {
    std::vector<std::size_t> ends;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto d = utf8::decode_one(s.substr(pos));
        pos += d ? d->length : 1;
        ends.push_back(pos);
    }
    return ends;
}

} // namespace detail

/// Voiced form of a soft-final root: p->b, t->d, k->ğ, ç->c.
inline std::string soften(std::string_view form) {
    auto scalars = utf8::decode(form);
    if (!scalars || scalars->empty()) return std::string(form);
    char32_t& last = scalars->back();
    switch (last) {
    case U'p': last = U'b'; break;
    case U't': last = U'd'; break;
    case U'k': last = U'ğ'; break;
    case U'ç': last = U'c'; break;
    default: break;
    }
    return utf8::encode(*scalars);
}

class RootLexicon {
public:
    RootLexicon() = default;

    explicit RootLexicon(std::vector<RootEntry> entries) {
        for (auto& e : entries) add(std::move(e), "<lexicon>", 0);
    }

    static RootLexicon parse(std::string_view content, std::string_view origin = "<lexicon>") {
        RootLexicon lex;
        for (const auto& row : detail::read_tsv(content)) {
            const auto at = detail::where(origin, row.line);
            if (row.cells.size() != 3) throw Error(at + "expected 3 tab-separated columns, got " + std::to_string(row.cells.size()));
            RootEntry e;
            e.form = std::string(row.cells[0]);
            if (row.cells[1] == "noun") e.category = RootCategory::noun;
            else if (row.cells[1] == "verb") e.category = RootCategory::verb;
            else if (row.cells[1] == "other") e.category = RootCategory::other;
            else throw Error(at + "unknown category '" + std::string(row.cells[1]) + "'");
            if (row.cells[2] == "0") e.soft_final = false;
            else if (row.cells[2] == "1") e.soft_final = true;
            else throw Error(at + "soft_final must be 0 or 1");
            lex.add(std::move(e), origin, row.line);
        }
        return lex;
    }

    static RootLexicon load(const std::filesystem::path& path) {
        return parse(detail::read_text_file(path), path.string());
    }

    const std::vector<RootEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool contains_form(std::string_view form) const { return forms_.contains(std::string(form)); }

    struct Surface {
        std::size_t entry;
        bool softened;
    };

    /// Root entries whose plain or softened surface equals `s`.
    const std::vector<Surface>* surfaces(std::string_view s) const {
        auto it = by_surface_.find(std::string(s));
        return it == by_surface_.end() ? nullptr : &it->second;
    }

private:
    void add(RootEntry e, std::string_view origin, std::size_t line) {
        const auto at = detail::where(origin, line);
        if (!detail::turkish_word(e.form)) throw Error(at + "root '" + e.form + "' must be lowercase Turkish letters");
        if (!detail::has_vowel(e.form)) throw Error(at + "root '" + e.form + "' has no vowel");
        if (e.soft_final && soften(e.form) == e.form) {
            throw Error(at + "root '" + e.form + "' is marked soft_final but does not end in p, t, k or ç");
        }
        for (const auto& prev : entries_) {
            if (prev.form == e.form && prev.category == e.category) {
                throw Error(at + "duplicate root '" + e.form + "' (" + std::string(to_string(e.category)) + ")");
            }
        }
        const std::size_t idx = entries_.size();
        forms_.insert(e.form);
        by_surface_[e.form].push_back({idx, false});
        if (e.soft_final) by_surface_[soften(e.form)].push_back({idx, true});
        entries_.push_back(std::move(e));
    }

    std::vector<RootEntry> entries_;
    std::unordered_set<std::string> forms_;
    std::unordered_map<std::string, std::vector<Surface>> by_surface_;
};

class AffixInventory {
public:
    AffixInventory() = default;

    explicit AffixInventory(std::vector<AffixEntry> entries) {
        for (auto& e : entries) add(std::move(e), "<affixes>", 0);
    }

    static AffixInventory parse(std::string_view content, std::string_view origin = "<affixes>") {
        AffixInventory inv;
        for (const auto& row : detail::read_tsv(content)) {
            const auto at = detail::where(origin, row.line);
            if (row.cells.size() != 5) throw Error(at + "expected 5 tab-separated columns, got " + std::to_string(row.cells.size()));
            AffixEntry e;
            e.allomorph = std::string(row.cells[0]);
            e.morpheme = std::string(row.cells[1]);
            const auto slot = row.cells[2];
            auto [ptr, ec] = std::from_chars(slot.data(), slot.data() + slot.size(), e.slot);
            if (ec != std::errc() || ptr != slot.data() + slot.size() || e.slot < 0) {
                throw Error(at + "slot must be a non-negative integer, got '" + std::string(slot) + "'");
            }
            if (row.cells[3] == "front") e.harmony = Harmony::front;
            else if (row.cells[3] == "back") e.harmony = Harmony::back;
            else if (row.cells[3] == "neutral") e.harmony = Harmony::neutral;
            else throw Error(at + "unknown harmony class '" + std::string(row.cells[3]) + "'");
            if (row.cells[4] == "noun") e.attaches_to = AffixTarget::noun;
            else if (row.cells[4] == "verb") e.attaches_to = AffixTarget::verb;
            else if (row.cells[4] == "any") e.attaches_to = AffixTarget::any;
            else throw Error(at + "unknown attachment '" + std::string(row.cells[4]) + "'");
            inv.add(std::move(e), origin, row.line);
        }
        return inv;
    }

    static AffixInventory load(const std::filesystem::path& path) {
        return parse(detail::read_text_file(path), path.string());
    }

    const std::vector<AffixEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool contains_allomorph(std::string_view s) const { return by_form_.contains(std::string(s)); }

    /// Indices of entries whose allomorph equals `s`.
    const std::vector<std::size_t>* with_form(std::string_view s) const {
        auto it = by_form_.find(std::string(s));
        return it == by_form_.end() ? nullptr : &it->second;
    }

    /// Distinct morpheme labels.
    std::set<std::string> morphemes() const {
        std::set<std::string> out;
        for (const auto& [label, slot] : morpheme_slot_) out.insert(label);
        return out;
    }

private:
    void add(AffixEntry e, std::string_view origin, std::size_t line) {
        const auto at = detail::where(origin, line);
        if (!detail::turkish_word(e.allomorph)) throw Error(at + "allomorph '" + e.allomorph + "' must be lowercase Turkish letters");
        if (e.morpheme.empty()) throw Error(at + "empty morpheme label");
        if (auto it = morpheme_slot_.find(e.morpheme); it != morpheme_slot_.end() && it->second != e.slot) {
            throw Error(at + "morpheme " + e.morpheme + " already has slot " + std::to_string(it->second));
        }
        for (const auto& prev : entries_) {
            if (prev.allomorph == e.allomorph && prev.morpheme == e.morpheme) {
                throw Error(at + "duplicate affix '" + e.allomorph + "' (" + e.morpheme + ")");
            }
        }
        morpheme_slot_[e.morpheme] = e.slot;
        by_form_[e.allomorph].push_back(entries_.size());
        entries_.push_back(std::move(e));
    }

    std::vector<AffixEntry> entries_;
    std::map<std::string, int> morpheme_slot_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_form_;
};

class WordList {
public:
    WordList() = default;

    static WordList parse(std::string_view content) {
        WordList wl;
        std::size_t pos = 0;
        while (pos < content.size()) {
            auto nl = content.find('\n', pos);
            if (nl == std::string_view::npos) nl = content.size();
            std::string_view line = content.substr(pos, nl - pos);
            pos = nl + 1;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
            while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
            if (line.empty() || line.front() == '#') continue;
            wl.words_.insert(turkish_lower(line));
        }
        return wl;
    }

    static WordList load(const std::filesystem::path& path) { return parse(detail::read_text_file(path)); }

    bool contains(std::string_view w) const { return words_.contains(std::string(w)); }
    std::size_t size() const noexcept { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// ---------------------------------------------------------------------------
// Harmony and segmentation

/// Front/back agreement between the last vowel of `stem` and the affix.
inline bool harmony_ok(std::string_view stem, const AffixEntry& affix) {
    auto scalars = utf8::decode(stem);
    if (!scalars) throw Error("stem is not valid UTF-8");
    auto last = std::find_if(scalars->rbegin(), scalars->rend(), is_vowel);
    if (last == scalars->rend()) throw Error("stem '" + std::string(stem) + "' has no vowel");
    switch (affix.harmony) {
    case Harmony::neutral: return true;
    case Harmony::front: return is_front_vowel(*last);
    case Harmony::back: return is_back_vowel(*last);
    }
    return false;
}

inline bool attaches(const AffixEntry& affix, RootCategory category) noexcept {
    switch (affix.attaches_to) {
    case AffixTarget::any: return true;
    case AffixTarget::noun: return category == RootCategory::noun;
    case AffixTarget::verb: return category == RootCategory::verb;
    }
    return false;
}

inline bool vowel_initial(std::string_view s) {
    auto c = detail::first_scalar(s);
    return c && is_vowel(*c);
}

struct Segmentation {
    RootEntry root;
    std::string root_surface; // form, or its softened variant
    std::vector<AffixEntry> affixes;

    std::string surface() const {
        std::string out = root_surface;
        for (const auto& a : affixes) out += a.allomorph;
        return out;
    }

    /// e.g. "ev+ler(PL)+imiz(POSS1PL)+den(ABL)"
    std::string to_string() const {
        std::string out = root_surface;
        for (const auto& a : affixes) out += "+" + a.allomorph + "(" + a.morpheme + ")";
        return out;
    }

    friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

namespace detail {

class Segmenter {
public:
    Segmenter(std::string_view word, const RootLexicon& lex, const AffixInventory& inv)
        : word_(word), lex_(lex), inv_(inv), ends_(scalar_ends(word)) {}

    std::vector<Segmentation> run() {
        for (std::size_t end : ends_) {
            const auto* roots = lex_.surfaces(word_.substr(0, end));
            if (!roots) continue;
            for (const auto& s : *roots) {
                current_ = Segmentation{lex_.entries()[s.entry], std::string(word_.substr(0, end)), {}};
                root_softened_ = s.softened;
                extend(end, -1);
            }
        }
        std::stable_sort(results_.begin(), results_.end(), [](const Segmentation& a, const Segmentation& b) {
            const auto la = utf8::scalar_count(a.root_surface);
            const auto lb = utf8::scalar_count(b.root_surface);
            if (la != lb) return la > lb;
            return a.affixes.size() < b.affixes.size();
        });
        return std::move(results_);
    }

private:
    void extend(std::size_t pos, int last_slot) {
        if (pos == word_.size()) {
            // A softened root needs a vowel-initial affix right after it;
            // an unsoftened soft root must not be followed by one.
            const bool first_vowel = !current_.affixes.empty() && vowel_initial(current_.affixes.front().allomorph);
            const bool soft = current_.root.soft_final;
            if (soft && root_softened_ != first_vowel) return;
            results_.push_back(current_);
            return;
        }
        const std::string_view rest = word_.substr(pos);
        const std::string_view consumed = word_.substr(0, pos);
        for (std::size_t e : scalar_ends(rest)) {
            const auto* ids = inv_.with_form(rest.substr(0, e));
            if (!ids) continue;
            for (std::size_t id : *ids) {
                const AffixEntry& a = inv_.entries()[id];
                if (a.slot <= last_slot) continue;
                if (!attaches(a, current_.root.category)) continue;
                if (!harmony_ok(consumed, a)) continue;
                if (current_.affixes.empty() && current_.root.soft_final && root_softened_ != vowel_initial(a.allomorph)) continue;
                current_.affixes.push_back(a);
                extend(pos + e, a.slot);
                current_.affixes.pop_back();
            }
        }
    }

    std::string_view word_;
    const RootLexicon& lex_;
    const AffixInventory& inv_;
    std::vector<std::size_t> ends_;
    Segmentation current_;
    bool root_softened_ = false;
    std::vector<Segmentation> results_;
};

} // namespace detail

/// Every root + affix-chain parse of a normalized word, ordered by root
/// length (longest first) and then affix count (fewest first).
inline std::vector<Segmentation> segment_word(std::string_view word, const RootLexicon& lex,
                                              const AffixInventory& inv) {
    if (word.empty() || !utf8::is_valid(word)) return {};
    return detail::Segmenter(word, lex, inv).run();
}

/// True iff `word` splits into one or more allomorphs with strictly
/// increasing slots.
inline bool is_affix_chain(std::string_view word, const AffixInventory& inv, int last_slot = -1) {
    if (word.empty()) return false;
    for (std::size_t e : detail::scalar_ends(word)) {
        const auto* ids = inv.with_form(word.substr(0, e));
        if (!ids) continue;
        for (std::size_t id : *ids) {
            const int slot = inv.entries()[id].slot;
            if (slot <= last_slot) continue;
            if (e == word.size() || is_affix_chain(word.substr(e), inv, slot)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Predicates

enum class PurityMode { single, extended };

inline PurityMode parse_purity_mode(std::string_view s) {
    if (s == "single") return PurityMode::single;
    if (s == "extended") return PurityMode::extended;
    throw Error("unknown purity mode '" + std::string(s) + "' (expected single or extended)");
}

/// The two membership predicates behind %TR and %Pure. Implementations
/// must be thread-safe for concurrent const calls.
class TokenValidator {
public:
    virtual ~TokenValidator() = default;
    virtual bool is_valid_word(std::string_view word) const = 0;
    virtual bool is_pure_token(std::string_view word) const = 0;
};

class TurkishValidator final : public TokenValidator {
public:
    TurkishValidator(RootLexicon lexicon, AffixInventory affixes, WordList words = {},
                     PurityMode mode = PurityMode::single)
        : lexicon_(std::move(lexicon)), affixes_(std::move(affixes)), words_(std::move(words)), mode_(mode) {}

    bool is_valid_word(std::string_view word) const override {
        const auto w = turkish_lower(word);
        if (!all_letters(w)) return false;
        return words_.contains(w) || !segment_word(w, lexicon_, affixes_).empty();
    }

    bool is_pure_token(std::string_view word) const override {
        const auto w = turkish_lower(word);
        if (!all_letters(w)) return false;
        if (lexicon_.contains_form(w) || affixes_.contains_allomorph(w)) return true;
        if (mode_ == PurityMode::single) return false;
        return !segment_word(w, lexicon_, affixes_).empty() || is_affix_chain(w, affixes_);
    }

    std::vector<Segmentation> segment(std::string_view word) const {
        const auto w = turkish_lower(word);
        if (!all_letters(w)) return {};
        return segment_word(w, lexicon_, affixes_);
    }

    const RootLexicon& lexicon() const noexcept { return lexicon_; }
    const AffixInventory& affixes() const noexcept { return affixes_; }
    PurityMode mode() const noexcept { return mode_; }

private:
    RootLexicon lexicon_;
    AffixInventory affixes_;
    WordList words_;
    PurityMode mode_;
};

} // namespace tokeval::turkval
