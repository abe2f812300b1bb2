#pragma once

// UTF-8 codec and a small, table-driven character classification.
//
// The classification covers the scripts that show up in Turkish and
// multilingual benchmark text (Latin, Greek, Cyrillic, Armenian, Hebrew,
// Arabic, Devanagari, Thai, Georgian, kana, CJK, Hangul). Anything outside
// these ranges is classified as "other". It is deterministic and does not
// depend on the process locale.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tokeval::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
    char32_t scalar;
    std::size_t length; // bytes consumed
};

/// Decodes one scalar at the start of `s`. Rejects overlong forms,
/// surrogates and values above U+10FFFF.
inline std::optional<Decoded> decode_one(std::string_view s) noexcept {
    if (s.empty()) return std::nullopt;
    const auto b0 = static_cast<unsigned char>(s[0]);
    if (b0 < 0x80) return Decoded{b0, 1};

    std::size_t len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2; cp = b0 & 0x1F; min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3; cp = b0 & 0x0F; min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4; cp = b0 & 0x07; min = 0x10000;
    } else {
        return std::nullopt;
    }
    if (s.size() < len) return std::nullopt;
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[i]);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    return Decoded{cp, len};
}

inline void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(char32_t cp) {
    std::string out;
    append(out, cp);
    return out;
}

inline std::string encode(std::u32string_view scalars) {
    std::string out;
    out.reserve(scalars.size());
    for (char32_t cp : scalars) append(out, cp);
    return out;
}

/// Strict decode of a whole string; nullopt on any invalid sequence.
inline std::optional<std::u32string> decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    while (!s.empty()) {
        auto d = decode_one(s);
        if (!d) return std::nullopt;
        out.push_back(d->scalar);
        s.remove_prefix(d->length);
    }
    return out;
}

inline bool is_valid(std::string_view s) noexcept {
    while (!s.empty()) {
        auto d = decode_one(s);
        if (!d) return false;
        s.remove_prefix(d->length);
    }
    return true;
}

/// Byte offset of the first invalid sequence, if any.
inline std::optional<std::size_t> first_invalid(std::string_view s) noexcept {
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto d = decode_one(s.substr(pos));
        if (!d) return pos;
        pos += d->length;
    }
    return std::nullopt;
}

namespace detail {

struct Range {
    char32_t lo;
    char32_t hi;
};

template <std::size_t N>
constexpr bool in_ranges(const std::array<Range, N>& ranges, char32_t cp) noexcept {
    auto it = std::upper_bound(ranges.begin(), ranges.end(), cp,
                               [](char32_t v, const Range& r) { return v < r.lo; });
    if (it == ranges.begin()) return false;
    --it;
    return cp <= it->hi;
}

// Sorted, non-overlapping.
inline constexpr std::array<Range, 46> kLetters{{
    {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00B5, 0x00B5},
    {0x00BA, 0x00BA}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02C1},
    {0x02C6, 0x02D1}, {0x02E0, 0x02E4}, {0x0370, 0x0374}, {0x0376, 0x0377},
    {0x037A, 0x037D}, {0x037F, 0x037F}, {0x0386, 0x0386}, {0x0388, 0x03F5},
    {0x03F7, 0x0481}, {0x048A, 0x052F}, {0x0531, 0x0556}, {0x0561, 0x0587},
    {0x05D0, 0x05EA}, {0x0620, 0x064A}, {0x0671, 0x06D3}, {0x0904, 0x0939},
    {0x0E01, 0x0E30}, {0x10A0, 0x10FF}, {0x1E00, 0x1FBC}, {0x1FC2, 0x1FCC},
    {0x1FD0, 0x1FDB}, {0x1FE0, 0x1FEC}, {0x1FF2, 0x1FFC}, {0x3041, 0x3096},
    {0x30A1, 0x30FA}, {0x3400, 0x4DBF}, {0x4E00, 0x9FFF}, {0xAC00, 0xD7A3},
    {0xF900, 0xFAFF}, {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A}, {0xFF66, 0xFFBE},
    {0x10400, 0x1044F}, {0x1D400, 0x1D6A5}, {0x20000, 0x2A6DF}, {0x2A700, 0x2EBEF},
    {0x2F800, 0x2FA1F}, {0x30000, 0x3134F},
}};

inline constexpr std::array<Range, 5> kDigits{{
    {0x0030, 0x0039}, {0x0660, 0x0669}, {0x06F0, 0x06F9}, {0x0966, 0x096F},
    {0xFF10, 0xFF19},
}};

// The Unicode White_Space property.
inline constexpr std::array<Range, 10> kWhitespace{{
    {0x0009, 0x000D}, {0x0020, 0x0020}, {0x0085, 0x0085}, {0x00A0, 0x00A0},
    {0x1680, 0x1680}, {0x2000, 0x200A}, {0x2028, 0x2029}, {0x202F, 0x202F},
    {0x205F, 0x205F}, {0x3000, 0x3000},
}};

} // namespace detail

inline bool is_letter(char32_t cp) noexcept { return detail::in_ranges(detail::kLetters, cp); }
inline bool is_digit(char32_t cp) noexcept { return detail::in_ranges(detail::kDigits, cp); }
inline bool is_whitespace(char32_t cp) noexcept { return detail::in_ranges(detail::kWhitespace, cp); }

enum class CharClass { letter, digit, whitespace, other };

inline CharClass classify(char32_t cp) noexcept {
    if (is_letter(cp)) return CharClass::letter;
    if (is_digit(cp)) return CharClass::digit;
    if (is_whitespace(cp)) return CharClass::whitespace;
    return CharClass::other;
}

/// Simple (one-to-one) lowercase mapping for Latin, Greek and Cyrillic.
/// Locale-neutral: 'I' maps to 'i' and U+0130 maps to 'i'.
inline char32_t simple_lower(char32_t cp) noexcept {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0xC0) return cp;
    if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
    if (cp == 0x130) return U'i';
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0 && cp != 0x130) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x386) return 0x3AC;
    if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
    if (cp == 0x38C) return 0x3CC;
    if (cp == 0x38E || cp == 0x38F) return cp + 0x3F;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    return cp;
}

/// Number of Unicode scalar values. Invalid bytes count one each.
inline std::size_t scalar_count(std::string_view s) noexcept {
    std::size_t n = 0;
    while (!s.empty()) {
        auto d = decode_one(s);
        s.remove_prefix(d ? d->length : 1);
        ++n;
    }
    return n;
}

} // namespace tokeval::utf8
