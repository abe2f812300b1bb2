#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tokeval/error.hpp"
#include "tokeval/utf8.hpp"

namespace tokeval {

struct Document {
    std::string id;
    std::string text;

    friend bool operator==(const Document&, const Document&) = default;
};

enum class CorpusFormat { jsonl, plain };

inline CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "jsonl") return CorpusFormat::jsonl;
    if (name == "plain") return CorpusFormat::plain;
    throw Error("unknown corpus format '" + std::string(name) + "' (expected jsonl or plain)");
}

/// An ordered, immutable collection of documents with unique ids.
class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
        std::unordered_set<std::string_view> seen;
        for (const auto& d : docs_) {
            if (!seen.insert(d.id).second) throw Error("duplicate document id '" + d.id + "'");
            if (auto bad = utf8::first_invalid(d.text)) {
                throw Error("document '" + d.id + "': invalid UTF-8 at byte " + std::to_string(*bad));
            }
        }
    }

    /// Builds a corpus from raw texts with ids "0", "1", ...
    static Corpus from_texts(std::span<const std::string> texts) {
        std::vector<Document> docs;
        docs.reserve(texts.size());
        for (std::size_t i = 0; i < texts.size(); ++i) docs.push_back({std::to_string(i), texts[i]});
        return Corpus(std::move(docs));
    }

    const std::vector<Document>& documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }
    auto begin() const noexcept { return docs_.begin(); }
    auto end() const noexcept { return docs_.end(); }

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    std::vector<Document> docs_;
};

struct CorpusStats {
    std::size_t document_count = 0;
    std::size_t char_count = 0; // Unicode scalar values
    std::size_t word_count = 0; // maximal runs of non-whitespace

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

inline std::size_t count_words(std::string_view text) {
    std::size_t words = 0;
    bool in_word = false;
    while (!text.empty()) {
        auto d = utf8::decode_one(text);
        const char32_t cp = d ? d->scalar : utf8::kReplacement;
        text.remove_prefix(d ? d->length : 1);
        const bool ws = utf8::is_whitespace(cp);
        if (!ws && !in_word) ++words;
        in_word = !ws;
    }
    return words;
}

inline CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats s;
    s.document_count = corpus.size();
    for (const auto& d : corpus) {
        s.char_count += utf8::scalar_count(d.text);
        s.word_count += count_words(d.text);
    }
    return s;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string line_prefix(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line) + ": ";
}

} // namespace detail

/// Parses JSONL text. Each non-blank line is one record; the named string
/// fields are joined with a single '\n'. A string or integer "id" field is
/// used as the document id, otherwise "line-<n>".
inline Corpus parse_jsonl(std::string_view content, const std::vector<std::string>& text_fields,
                          const std::filesystem::path& origin = "<jsonl>") {
    if (text_fields.empty()) throw Error("no text fields selected");
    std::vector<Document> docs;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string_view::npos) nl = content.size();
        std::string_view line = content.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(detail::line_prefix(origin, line_no) + "malformed JSON record (" + e.what() + ")");
        }
        if (!record.is_object()) throw Error(detail::line_prefix(origin, line_no) + "record is not a JSON object");

        std::string text;
        for (std::size_t i = 0; i < text_fields.size(); ++i) {
            const auto& name = text_fields[i];
            auto it = record.find(name);
            if (it == record.end()) throw Error(detail::line_prefix(origin, line_no) + "missing field '" + name + "'");
            if (!it->is_string()) throw Error(detail::line_prefix(origin, line_no) + "field '" + name + "' is not a string");
            if (i > 0) text.push_back('\n');
            text += it->get_ref<const std::string&>();
        }

        std::string id = "line-" + std::to_string(line_no);
        if (auto it = record.find("id"); it != record.end()) {
            if (it->is_string()) id = it->get<std::string>();
            else if (it->is_number_integer()) id = std::to_string(it->get<long long>());
        }
        if (auto bad = utf8::first_invalid(text)) {
            throw Error(detail::line_prefix(origin, line_no) + "invalid UTF-8 at byte " + std::to_string(*bad));
        }
        docs.push_back({std::move(id), std::move(text)});
    }
    return Corpus(std::move(docs));
}

/// Loads a corpus. For `plain`, a file is one document; a directory yields
/// one document per regular file, in file-name order.
inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          const std::vector<std::string>& text_fields = {"text"}) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw Error("file not found: '" + path.string() + "'");

    if (format == CorpusFormat::jsonl) return parse_jsonl(detail::read_file(path), text_fields, path);

    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    std::vector<Document> docs;
    for (const auto& f : files) docs.push_back({f.filename().string(), detail::read_file(f)});
    return Corpus(std::move(docs));
}

} // namespace tokeval
