#pragma once

// Reference implementations used only by the tests. They are written
// independently of the library code paths and favour brute force.

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <tokeval/tokeval.hpp>

namespace oracle {

// Byte-level table by direct enumeration: printable bytes keep their value,
// the rest are numbered from 256 in byte order.
inline char32_t byte_symbol(unsigned b) {
    auto keeps = [](unsigned v) { return (v >= '!' && v <= '~') || (v >= 0xA1 && v <= 0xAC) || (v >= 0xAE && v <= 0xFF); };
    if (keeps(b)) return b;
    unsigned n = 0;
    for (unsigned v = 0; v < b; ++v)
        if (!keeps(v)) ++n;
    return 256 + n;
}

// Sum-of-products form, as opposed to the centred two-pass form.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    long double n = x.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += (long double)x[i] * x[i];
        syy += (long double)y[i] * y[i];
        sxy += (long double)x[i] * y[i];
    }
    return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

inline const std::u32string kFront = U"eiöüî";
inline const std::u32string kBack = U"aıouâû";

inline bool vowel(char32_t c) { return kFront.find(c) != std::u32string::npos || kBack.find(c) != std::u32string::npos; }

inline std::u32string u32(const std::string& s) { return *tokeval::utf8::decode(s); }

inline std::string soft_form(const std::string& form) {
    auto s = u32(form);
    const std::u32string hard = U"ptkç", soft = U"bdğc";
    auto i = hard.find(s.back());
    if (i != std::u32string::npos) s.back() = soft[i];
    return tokeval::utf8::encode(s);
}

inline bool category_ok(const tokeval::turkval::AffixEntry& a, tokeval::turkval::RootCategory c) {
    using tokeval::turkval::AffixTarget;
    using tokeval::turkval::RootCategory;
    if (a.attaches_to == AffixTarget::noun) return c == RootCategory::noun;
    if (a.attaches_to == AffixTarget::verb) return c == RootCategory::verb;
    return true;
}

inline bool harmony(const std::u32string& stem, const tokeval::turkval::AffixEntry& a) {
    using tokeval::turkval::Harmony;
    char32_t last = 0;
    for (char32_t c : stem)
        if (vowel(c)) last = c;
    if (a.harmony == Harmony::neutral) return true;
    const bool front = kFront.find(last) != std::u32string::npos;
    return a.harmony == Harmony::front ? front : !front;
}

// Identity of a parse, including the root category.
inline std::string key(const tokeval::turkval::RootEntry& root, const std::string& surface,
                       const std::vector<tokeval::turkval::AffixEntry>& affixes) {
    std::string k = root.form + "/" + std::string(tokeval::turkval::to_string(root.category)) + "|" + surface;
    for (const auto& a : affixes) k += "+" + a.allomorph + "(" + a.morpheme + ")";
    return k;
}

inline std::string key(const tokeval::turkval::Segmentation& s) { return key(s.root, s.root_surface, s.affixes); }

// Every split of a word into root + up to `max_affixes` pieces, checked
// against flat lists of root surfaces and allomorphs by linear scans.
class SplitEnumerator {
public:
    SplitEnumerator(const tokeval::turkval::RootLexicon& lex, const tokeval::turkval::AffixInventory& inv,
                    std::size_t max_affixes)
        : affixes_(inv.entries()), max_affixes_(max_affixes) {
        for (const auto& r : lex.entries()) {
            roots_.push_back({r, u32(r.form), false});
            if (r.soft_final) roots_.push_back({r, u32(soft_form(r.form)), true});
        }
        for (const auto& a : affixes_) forms_.push_back(u32(a.allomorph));
    }

    std::set<std::string> operator()(const std::string& word) const {
        std::set<std::string> out;
        const auto w = u32(word);
        if (w.empty()) return out;
        std::vector<std::size_t> cuts;
        rec(w, cuts, 1, out);
        return out;
    }

private:
    struct RootSurface {
        tokeval::turkval::RootEntry entry;
        std::u32string surface;
        bool softened;
    };

    bool is_root_surface(const std::u32string& s) const {
        for (const auto& r : roots_)
            if (r.surface == s) return true;
        return false;
    }

    bool is_allomorph(const std::u32string& s) const {
        for (const auto& f : forms_)
            if (f == s) return true;
        return false;
    }

    // Cut positions are strictly increasing in (0, n). A prefix whose pieces
    // are not all known forms cannot lead to a parse.
    void rec(const std::u32string& w, std::vector<std::size_t>& cuts, std::size_t from, std::set<std::string>& out) const {
        check(w, cuts, out);
        if (cuts.size() == max_affixes_) return;
        for (std::size_t c = from; c < w.size(); ++c) {
            const std::size_t start = cuts.empty() ? 0 : cuts.back();
            const auto head = w.substr(start, c - start);
            if (cuts.empty() ? !is_root_surface(head) : !is_allomorph(head)) continue;
            cuts.push_back(c);
            rec(w, cuts, c + 1, out);
            cuts.pop_back();
        }
    }

    void check(const std::u32string& w, const std::vector<std::size_t>& cuts, std::set<std::string>& out) const {
        std::vector<std::u32string> parts;
        std::size_t prev = 0;
        for (std::size_t c : cuts) {
            parts.push_back(w.substr(prev, c - prev));
            prev = c;
        }
        parts.push_back(w.substr(prev));

        // All affix assignments for parts[1..].
        std::vector<std::vector<const tokeval::turkval::AffixEntry*>> options(parts.size());
        for (std::size_t i = 1; i < parts.size(); ++i) {
            for (std::size_t a = 0; a < affixes_.size(); ++a)
                if (forms_[a] == parts[i]) options[i].push_back(&affixes_[a]);
            if (options[i].empty()) return;
        }

        for (const auto& root : roots_) {
            if (root.surface != parts[0]) continue;
            if (root.entry.soft_final) {
                const bool vowel_next = parts.size() > 1 && vowel(parts[1][0]);
                if (vowel_next != root.softened) continue;
            }
            const std::string root_surface = tokeval::utf8::encode(parts[0]);
            std::vector<std::size_t> pick(parts.size(), 0);
            while (true) {
                std::vector<tokeval::turkval::AffixEntry> chain;
                for (std::size_t i = 1; i < parts.size(); ++i) chain.push_back(*options[i][pick[i]]);
                bool ok = true;
                std::u32string stem = parts[0];
                for (std::size_t i = 0; i < chain.size() && ok; ++i) {
                    if (i > 0 && chain[i].slot <= chain[i - 1].slot) ok = false;
                    if (!category_ok(chain[i], root.entry.category)) ok = false;
                    if (!harmony(stem, chain[i])) ok = false;
                    stem += parts[i + 1];
                }
                if (ok) out.insert(key(root.entry, root_surface, chain));
                std::size_t i = 1;
                while (i < parts.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
                if (i >= parts.size()) break;
            }
        }
    }

    std::vector<RootSurface> roots_;
    std::vector<tokeval::turkval::AffixEntry> affixes_;
    std::vector<std::u32string> forms_;
    std::size_t max_affixes_;
};

inline std::set<std::string> segmentations(const std::string& word, const tokeval::turkval::RootLexicon& lex,
                                           const tokeval::turkval::AffixInventory& inv, std::size_t max_affixes) {
    return SplitEnumerator(lex, inv, max_affixes)(word);
}

// Greedy longest match by trying every prefix length from the top.
inline std::vector<std::string> longest_match(const std::string& s, const std::set<std::string>& vocab) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t best = 0;
        for (std::size_t len = s.size() - pos; len > 0; --len) {
            if (vocab.count(s.substr(pos, len))) {
                best = len;
                break;
            }
        }
        if (best == 0) {
            auto d = tokeval::utf8::decode_one(s.substr(pos));
            best = d ? d->length : 1;
            out.push_back("?" + s.substr(pos, best));
        } else {
            out.push_back(s.substr(pos, best));
        }
        pos += best;
    }
    return out;
}

} // namespace oracle
