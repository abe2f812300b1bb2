#pragma once

// Comparison config (UTF-8 JSON). Relative paths resolve against the
// config file's directory.
//
//   {"corpus": "corpus.jsonl", "corpus_format": "jsonl", "text_fields": ["text"],
//    "lexicon": "roots.tsv", "affixes": "affixes.tsv", "wordlist": "words.txt",
//    "options": {"weighting": "unique", "purity_mode": "single", "letters_only": false},
//    "entries": [{"name": "m", "tokenizer": "m.json", "params_b": 7.6,
//                 "external_scores": {"mmlu": 61.68}}]}

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tokeval/corpus.hpp"
#include "tokeval/error.hpp"
#include "tokeval/metrics.hpp"
#include "tokeval/turkval.hpp"

namespace tokeval {

struct ComparisonEntry {
    std::string name;
    std::filesystem::path tokenizer_file;
    std::optional<double> params_b;
    std::map<std::string, double> external_scores;
};

struct ComparisonConfig {
    std::vector<ComparisonEntry> entries;
    std::filesystem::path corpus;
    CorpusFormat corpus_format = CorpusFormat::jsonl;
    std::vector<std::string> text_fields{"text"};
    std::optional<std::filesystem::path> lexicon;
    std::optional<std::filesystem::path> affixes;
    std::optional<std::filesystem::path> wordlist;
    EvalOptions options;
    turkval::PurityMode purity_mode = turkval::PurityMode::single;
};

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

inline void require_file(const std::filesystem::path& p, const std::string& what) {
    if (!std::filesystem::exists(p)) throw Error(what + " not found: '" + p.string() + "'");
}

} // namespace detail

inline ComparisonConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    ComparisonConfig cfg;
    try {
        if (!j.contains("corpus")) throw Error("config has no \"corpus\"");
        cfg.corpus = detail::resolve(base_dir, j.at("corpus").get<std::string>());
        detail::require_file(cfg.corpus, "corpus");
        cfg.corpus_format = parse_corpus_format(j.value("corpus_format", "jsonl"));
        if (j.contains("text_fields")) cfg.text_fields = j.at("text_fields").get<std::vector<std::string>>();
        using Slot = std::pair<const char*, std::optional<std::filesystem::path>*>;
        for (const Slot& slot : {Slot{"lexicon", &cfg.lexicon}, Slot{"affixes", &cfg.affixes}, Slot{"wordlist", &cfg.wordlist}}) {
            if (j.contains(slot.first) && !j.at(slot.first).is_null()) {
                *slot.second = detail::resolve(base_dir, j.at(slot.first).get<std::string>());
                detail::require_file(**slot.second, slot.first);
            }
        }
        if (auto o = j.find("options"); o != j.end()) {
            cfg.options.weighting = parse_weighting(o->value("weighting", "unique"));
            cfg.options.letters_only = o->value("letters_only", false);
            cfg.options.workers = o->value("workers", std::size_t{1});
            cfg.purity_mode = turkval::parse_purity_mode(o->value("purity_mode", "single"));
        }
        auto entries = j.find("entries");
        if (entries == j.end() || !entries->is_array() || entries->empty()) throw Error("config has no entries");
        std::set<std::string> names;
        for (const auto& e : *entries) {
            ComparisonEntry entry;
            entry.name = e.at("name").get<std::string>();
            if (!names.insert(entry.name).second) throw Error("duplicate entry name '" + entry.name + "'");
            entry.tokenizer_file = detail::resolve(base_dir, e.at("tokenizer").get<std::string>());
            detail::require_file(entry.tokenizer_file, "tokenizer for '" + entry.name + "'");
            if (e.contains("params_b") && !e.at("params_b").is_null()) entry.params_b = e.at("params_b").get<double>();
            if (e.contains("external_scores")) entry.external_scores = e.at("external_scores").get<std::map<std::string, double>>();
            cfg.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
    return cfg;
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("'" + path.string() + "': malformed JSON (" + e.what() + ")");
    }
}

inline ComparisonConfig load_config(const std::filesystem::path& path) {
    return config_from_json(read_json_file(path), path.parent_path());
}

} // namespace tokeval
