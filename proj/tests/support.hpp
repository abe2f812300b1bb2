#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <tokeval/tokeval.hpp>

namespace support {

inline std::filesystem::path data(const std::string& rel) { return std::filesystem::path(TOKEVAL_DATA_DIR) / rel; }

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline tokeval::turkval::TurkishValidator fixture_validator(
    tokeval::turkval::PurityMode mode = tokeval::turkval::PurityMode::single) {
    using namespace tokeval::turkval;
    return TurkishValidator(RootLexicon::load(data("roots.tsv")), AffixInventory::load(data("affixes.tsv")),
                            WordList::load(data("words.txt")), mode);
}

// e v l r ev le ler plus the space-marked ev.
inline tokeval::TokenizerModel small_bpe(bool with_space_ev = true) {
    nlohmann::json j = {{"kind", "byte-bpe"},
                        {"vocab", {{"e", 0}, {"v", 1}, {"l", 2}, {"r", 3}, {"ev", 4}, {"le", 5}, {"ler", 6}}},
                        {"merges", {"e v", "l e", "le r"}}};
    if (with_space_ev) {
        j["vocab"]["\xC4\xA0"] = 7;
        j["vocab"]["\xC4\xA0" "ev"] = 8;
        j["merges"].push_back("\xC4\xA0 ev");
    }
    return tokeval::TokenizerModel::from_json(j);
}

inline tokeval::TokenizerModel toy_bpe() { return tokeval::load_tokenizer(data("toy/toy_bpe.json")); }
inline tokeval::TokenizerModel toy_greedy() { return tokeval::load_tokenizer(data("toy/toy_greedy.json")); }

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI through the shell. stderr is folded into `out` when `merge` is set.
inline Run cli(const std::string& args, bool merge = false) {
    std::string cmd = std::string("\"") + TOKEVAL_CLI + "\" " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

inline std::string quote(const std::string& s) { return "'" + s + "'"; }

// A random string of Unicode scalars drawn from several scripts, whitespace
// and symbol blocks.
inline std::string random_text(std::mt19937& rng, std::size_t max_len) {
    static const std::array<std::pair<char32_t, char32_t>, 10> blocks{{
        {0x20, 0x7E}, {0x09, 0x0D}, {0xA0, 0xFF}, {0x100, 0x17F}, {0x370, 0x3FF},
        {0x400, 0x4FF}, {0x4E00, 0x4FFF}, {0x1F300, 0x1F64F}, {0x2000, 0x206F}, {0x300, 0x36F},
    }};
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    std::string s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [lo, hi] = blocks[pick(rng)];
        std::uniform_int_distribution<std::uint32_t> cp(lo, hi);
        tokeval::utf8::append(s, static_cast<char32_t>(cp(rng)));
    }
    return s;
}

} // namespace support
