#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace tokeval;
using namespace tokeval::byte_level;

TEST(ByteLevel, MatchesEnumeratedTable) {
    for (unsigned b = 0; b < 256; ++b) EXPECT_EQ(byte_to_unicode(static_cast<std::uint8_t>(b)), oracle::byte_symbol(b)) << b;
}

TEST(ByteLevel, IsABijectionOnBytes) {
    std::set<char32_t> images;
    for (unsigned b = 0; b < 256; ++b) {
        const char32_t cp = byte_to_unicode(static_cast<std::uint8_t>(b));
        images.insert(cp);
        EXPECT_EQ(unicode_to_byte(cp), b);
    }
    EXPECT_EQ(images.size(), 256u);
}

TEST(ByteLevel, KnownAnchors) {
    EXPECT_EQ(byte_to_unicode(0x20), U'Ġ');
    EXPECT_EQ(byte_to_unicode(0x0A), U'Ċ');
    EXPECT_EQ(byte_to_unicode('a'), U'a');
    EXPECT_EQ(byte_to_unicode(0xAD), U'Ń');
}

TEST(ByteLevel, RejectsSymbolsOutsideTheAlphabet) {
    EXPECT_THROW(unicode_to_byte(U' '), Error);
    EXPECT_THROW(unicode_to_byte(U'ń'), Error);
    EXPECT_FALSE(byte_level::decode_symbols("\xE2\x96\x81"));
}

TEST(ByteLevel, EncodeDecodeAllBytes) {
    std::string all;
    for (unsigned b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
    const auto sym = byte_level::encode_bytes(all);
    EXPECT_TRUE(utf8::is_valid(sym));
    EXPECT_EQ(byte_level::decode_symbols(sym), all);
}
