#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace tokeval;
using namespace tokeval::turkval;

namespace {

const TurkishValidator& single() {
    static const auto v = support::fixture_validator(PurityMode::single);
    return v;
}

const TurkishValidator& extended() {
    static const auto v = support::fixture_validator(PurityMode::extended);
    return v;
}

std::vector<std::string> parses(std::string_view w) {
    std::vector<std::string> out;
    for (const auto& s : single().segment(w)) out.push_back(s.to_string());
    return out;
}

AffixEntry affix(std::string form, Harmony h) { return {std::move(form), "X", 1, h, AffixTarget::any}; }

} // namespace

TEST(TurkishLower, DottedAndDotlessI) {
    EXPECT_EQ(turkish_lower("ISTANBUL"), "ıstanbul");
    EXPECT_EQ(turkish_lower("İstanbul"), "istanbul");
    EXPECT_EQ(turkish_lower("ÇĞÖŞÜ"), "çğöşü");
    EXPECT_EQ(turkish_lower(U'I'), U'ı');
}

TEST(Harmony, FrontBackNeutral) {
    EXPECT_TRUE(harmony_ok("ev", affix("ler", Harmony::front)));
    EXPECT_FALSE(harmony_ok("ev", affix("lar", Harmony::back)));
    EXPECT_TRUE(harmony_ok("okul", affix("lar", Harmony::back)));
    EXPECT_FALSE(harmony_ok("okul", affix("ler", Harmony::front)));
    EXPECT_TRUE(harmony_ok("okul", affix("m", Harmony::neutral)));
    EXPECT_TRUE(harmony_ok("kitaplar", affix("ım", Harmony::back)));
    EXPECT_THROW(harmony_ok("str", affix("ler", Harmony::front)), Error);
}

TEST(Segment, CanonicalChain) {
    EXPECT_EQ(parses("evlerimizden"), (std::vector<std::string>{"ev+ler(PL)+imiz(POSS1PL)+den(ABL)"}));
}

TEST(Segment, RejectsWrongOrderAndHarmony) {
    EXPECT_TRUE(parses("evimizlerden").empty());
    EXPECT_TRUE(parses("evlar").empty());
    EXPECT_TRUE(parses("okuller").empty());
    EXPECT_EQ(parses("okullar"), (std::vector<std::string>{"okul+lar(PL)"}));
}

TEST(Segment, SoftFinalRoots) {
    EXPECT_EQ(parses("kitap"), (std::vector<std::string>{"kitap"}));
    EXPECT_EQ(parses("kitaplar"), (std::vector<std::string>{"kitap+lar(PL)"}));
    EXPECT_TRUE(parses("kitapı").empty());
    EXPECT_TRUE(parses("kitab").empty());
    EXPECT_TRUE(parses("kitablar").empty());
    const auto k = parses("kitabı");
    EXPECT_EQ(k.size(), 2u);
    for (const auto& p : k) EXPECT_EQ(p.rfind("kitab+ı(", 0), 0u);
}

TEST(Segment, CategoryRestriction) {
    EXPECT_FALSE(parses("geldi").empty());
    EXPECT_TRUE(parses("evdi").empty());
    EXPECT_TRUE(parses("gelden").empty());
}

TEST(Segment, OrderingLongestRootFirst) {
    for (const char* w : {"evler", "kitabı", "içler", "geldi", "evlerimizden", "okuldan", "bildi"}) {
        auto segs = single().segment(w);
        for (std::size_t i = 1; i < segs.size(); ++i) {
            const auto a = utf8::scalar_count(segs[i - 1].root_surface), b = utf8::scalar_count(segs[i].root_surface);
            EXPECT_TRUE(a > b || (a == b && segs[i - 1].affixes.size() <= segs[i].affixes.size())) << w;
        }
    }
}

TEST(Segment, AgreesWithBruteForce) {
    const auto& v = single();
    std::vector<std::string> words;
    for (const auto& r : v.lexicon().entries()) {
        std::vector<std::string> stems{r.form};
        if (r.soft_final) stems.push_back(oracle::soft_form(r.form));
        for (const auto& s : stems) {
            words.push_back(s);
            for (const auto& a : v.affixes().entries()) {
                words.push_back(s + a.allomorph);
                for (const auto& b : v.affixes().entries()) words.push_back(s + a.allomorph + b.allomorph);
            }
        }
    }
    std::mt19937 rng(5);
    const std::u32string letters = U"abcçdefgğhıijklmnoöprsştuüvyz";
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1), len(1, 10);
    for (int i = 0; i < 1000; ++i) {
        std::u32string w;
        for (std::size_t k = len(rng); k > 0; --k) w += letters[pick(rng)];
        words.push_back(utf8::encode(w));
    }
    const oracle::SplitEnumerator enumerate(v.lexicon(), v.affixes(), 3);
    for (const auto& w : words) {
        std::set<std::string> got;
        for (const auto& s : segment_word(w, v.lexicon(), v.affixes())) got.insert(oracle::key(s));
        ASSERT_EQ(got, enumerate(w)) << w;
    }
}

TEST(Predicates, TruthTable) {
    struct Row {
        const char* token;
        bool tr;
        bool pure;
    };
    for (const Row& r : {Row{"ev", true, true}, Row{"ler", false, true}, Row{"imiz", false, true}, Row{"den", false, true},
                         Row{"e", false, true}, Row{"vl", false, false}, Row{"imizd", false, false}, Row{"en", false, false},
                         Row{"evler", true, false}, Row{"Ev", true, true}, Row{"İstanbul", true, false}}) {
        EXPECT_EQ(single().is_valid_word(r.token), r.tr) << r.token;
        EXPECT_EQ(single().is_pure_token(r.token), r.pure) << r.token;
    }
}

TEST(Predicates, NonLettersNeverPass) {
    for (const char* t : {"", "ev1", "ev.", "e v", "2024", "?", "ev-ler"}) {
        EXPECT_FALSE(single().is_valid_word(t)) << t;
        EXPECT_FALSE(single().is_pure_token(t)) << t;
        EXPECT_FALSE(extended().is_pure_token(t)) << t;
    }
}

TEST(Predicates, InvariantUnderTurkishLowercase) {
    for (const char* w : {"EVLERİMİZDEN", "Evler", "KİTABI", "ISTANBUL", "İstanbul", "LER", "OKULLAR", "IMIZ", "İMİZ"}) {
        const auto lower = turkish_lower(w);
        EXPECT_EQ(single().is_valid_word(w), single().is_valid_word(lower)) << w;
        EXPECT_EQ(single().is_pure_token(w), single().is_pure_token(lower)) << w;
        EXPECT_EQ(turkish_lower(lower), lower);
    }
    EXPECT_TRUE(single().is_valid_word("EVLERİMİZDEN"));
    EXPECT_TRUE(single().is_pure_token("İMİZ"));
}

TEST(Predicates, ExtendedPurity) {
    EXPECT_TRUE(extended().is_pure_token("evler"));
    EXPECT_TRUE(extended().is_pure_token("lerimiz"));
    EXPECT_FALSE(extended().is_pure_token("imizler"));
    EXPECT_FALSE(extended().is_pure_token("imizd"));
}

TEST(Predicates, ExtendedIsSupersetOfSingle) {
    const auto& v = single();
    std::vector<std::string> probes;
    for (const auto& r : v.lexicon().entries()) probes.push_back(r.form);
    for (const auto& a : v.affixes().entries()) {
        probes.push_back(a.allomorph);
        probes.push_back("ev" + a.allomorph);
        probes.push_back(a.allomorph + "ler");
    }
    for (const auto& p : probes)
        if (single().is_pure_token(p)) {
            EXPECT_TRUE(extended().is_pure_token(p)) << p;
        }
}

TEST(Loaders, LexiconErrors) {
    EXPECT_THROW(RootLexicon::parse("ev\tnoun\n"), Error);
    EXPECT_THROW(RootLexicon::parse("ev\tthing\t0\n"), Error);
    EXPECT_THROW(RootLexicon::parse("ev\tnoun\t2\n"), Error);
    EXPECT_THROW(RootLexicon::parse("ev\tnoun\t1\n"), Error);
    EXPECT_THROW(RootLexicon::parse("str\tnoun\t0\n"), Error);
    EXPECT_THROW(RootLexicon::parse("Ev\tnoun\t0\n"), Error);
    EXPECT_THROW(RootLexicon::parse("ev\tnoun\t0\nev\tnoun\t0\n"), Error);
    EXPECT_NO_THROW(RootLexicon::parse("# c\n\niç\tnoun\t0\niç\tverb\t0\n"));
    try {
        RootLexicon::parse("ev\tnoun\t0\n\nxx\tnoun\t0\n", "roots");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("roots:3:", 0), 0u) << e.what();
    }
}

TEST(Loaders, AffixErrors) {
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t1\tfront\n"), Error);
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t-1\tfront\tnoun\n"), Error);
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t1\tup\tnoun\n"), Error);
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t1\tfront\tadj\n"), Error);
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t1\tfront\tnoun\nlar\tPL\t2\tback\tnoun\n"), Error);
    EXPECT_THROW(AffixInventory::parse("ler\tPL\t1\tfront\tnoun\nler\tPL\t1\tfront\tnoun\n"), Error);
    EXPECT_THROW(AffixInventory::load(support::data("missing.tsv")), Error);
}

TEST(Loaders, FixtureSizes) {
    EXPECT_GE(single().lexicon().size(), 40u);
    EXPECT_GE(single().affixes().morphemes().size(), 12u);
}
