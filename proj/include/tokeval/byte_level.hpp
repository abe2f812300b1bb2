#pragma once

// Byte <-> code point table used by byte-level BPE vocabularies.
//
// Printable bytes 33..126, 161..172 and 174..255 map to themselves. The
// remaining 68 bytes, in increasing order, map to U+0100, U+0101, ...

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tokeval/error.hpp"
#include "tokeval/utf8.hpp"

namespace tokeval::byte_level {

namespace detail {

constexpr bool is_identity_byte(unsigned b) noexcept {
    return (b >= 33 && b <= 126) || (b >= 161 && b <= 172) || (b >= 174 && b <= 255);
}

constexpr std::array<char32_t, 256> make_forward_table() noexcept {
    std::array<char32_t, 256> table{};
    char32_t next = 256;
    for (unsigned b = 0; b < 256; ++b) table[b] = is_identity_byte(b) ? char32_t(b) : next++;
    return table;
}

inline constexpr auto kForward = make_forward_table();

// The image is [0x21, 0x143]; everything below 0x100 that is not an
// identity byte is outside it.
constexpr std::array<int, 0x144> make_inverse_table() noexcept {
    std::array<int, 0x144> inv{};
    for (auto& v : inv) v = -1;
    for (unsigned b = 0; b < 256; ++b) inv[kForward[b]] = static_cast<int>(b);
    return inv;
}

inline constexpr auto kInverse = make_inverse_table();

} // namespace detail

constexpr char32_t byte_to_unicode(std::uint8_t b) noexcept { return detail::kForward[b]; }

constexpr std::optional<std::uint8_t> try_unicode_to_byte(char32_t cp) noexcept {
    if (cp >= detail::kInverse.size() || detail::kInverse[cp] < 0) return std::nullopt;
    return static_cast<std::uint8_t>(detail::kInverse[cp]);
}

inline std::uint8_t unicode_to_byte(char32_t cp) {
    if (auto b = try_unicode_to_byte(cp)) return *b;
    throw Error("code point U+" + std::to_string(static_cast<unsigned long>(cp)) +
                " is not in the byte-level alphabet");
}

/// Maps every byte of `bytes` through the table; returns UTF-8.
inline std::string encode_bytes(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (char c : bytes) utf8::append(out, byte_to_unicode(static_cast<std::uint8_t>(c)));
    return out;
}

/// Inverse of encode_bytes. nullopt if `symbols` is not valid UTF-8 or
/// contains a code point outside the table's image.
inline std::optional<std::string> decode_symbols(std::string_view symbols) {
    std::string out;
    out.reserve(symbols.size());
    while (!symbols.empty()) {
        auto d = utf8::decode_one(symbols);
        if (!d) return std::nullopt;
        auto b = try_unicode_to_byte(d->scalar);
        if (!b) return std::nullopt;
        out.push_back(static_cast<char>(*b));
        symbols.remove_prefix(d->length);
    }
    return out;
}

} // namespace tokeval::byte_level
