#pragma once

// Tokenizer evaluation: token counts, distinct tokens, timing, fertility
// and the %TR / %Pure shares over the produced tokens.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "tokeval/corpus.hpp"
#include "tokeval/error.hpp"
#include "tokeval/tokenizer.hpp"
#include "tokeval/turkval.hpp"

namespace tokeval {

enum class Weighting { unique, frequency };

inline Weighting parse_weighting(std::string_view s) {
    if (s == "unique") return Weighting::unique;
    if (s == "frequency") return Weighting::frequency;
    throw Error("unknown weighting '" + std::string(s) + "' (expected unique or frequency)");
}

struct EvalOptions {
    Weighting weighting = Weighting::unique;
    bool letters_only = false;
    // More than one worker disables timing.
    std::size_t workers = 1;
};

/// One tokenizer's metric row.
struct EvalReport {
    std::string model_name;
    std::optional<double> params_b;
    std::map<std::string, double> external_scores;
    std::size_t vocab_size = 0;
    std::size_t total_tokens = 0;
    std::size_t unique_tokens = 0;
    std::optional<double> processing_time_s;
    double pct_tr = 0;
    double pct_pure = 0;
    std::optional<double> fertility;
};

/// A distinct token together with how often it occurred.
struct TokenCount {
    DecodedToken token;
    std::size_t count = 1;
};

struct Percentages {
    double pct_tr = 0;
    double pct_pure = 0;
};

inline std::set<TokenId> unique_tokens(std::span<const TokenId> stream) {
    return {stream.begin(), stream.end()};
}

/// Share of tokens passing each predicate, in percent. Tokens that do not
/// normalize (no surface, non-letters) stay in the denominator unless
/// `letters_only` is set.
inline Percentages compute_percentages(std::span<const TokenCount> distinct, const turkval::TokenValidator& validator,
                                       Weighting weighting = Weighting::unique, bool letters_only = false) {
    if (distinct.empty()) throw Error("cannot compute percentages over an empty token set");
    double total = 0;
    double tr = 0;
    double pure = 0;
    for (const auto& tc : distinct) {
        const auto word = turkval::normalize_token(tc.token);
        if (letters_only && !word) continue;
        const double w = weighting == Weighting::unique ? 1.0 : static_cast<double>(tc.count);
        total += w;
        if (!word) continue;
        if (validator.is_valid_word(*word)) tr += w;
        if (validator.is_pure_token(*word)) pure += w;
    }
    if (total == 0) throw Error("no tokens left after the letters-only filter");
    return {100.0 * tr / total, 100.0 * pure / total};
}

inline double fertility(std::size_t total_tokens, std::size_t word_count) {
    if (word_count == 0) throw Error("fertility is undefined for a corpus with no words");
    return static_cast<double>(total_tokens) / static_cast<double>(word_count);
}

namespace detail {

inline std::vector<Token> encode_document(const TokenizerModel& model, const Document& doc) {
    try {
        return encode(model, doc.text);
    } catch (const Error& e) {
        throw Error("document '" + doc.id + "': " + e.what());
    }
}

/// Encodes every document; result order matches corpus order.
inline std::vector<std::vector<Token>> encode_all(const TokenizerModel& model, const Corpus& corpus,
                                                  std::size_t workers) {
    const auto& docs = corpus.documents();
    std::vector<std::vector<Token>> streams(docs.size());
    if (workers <= 1 || docs.size() <= 1) {
        for (std::size_t i = 0; i < docs.size(); ++i) streams[i] = encode_document(model, docs[i]);
        return streams;
    }

    workers = std::min(workers, docs.size());
    std::vector<std::exception_ptr> errors(docs.size());
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < docs.size(); i += workers) {
                    try {
                        streams[i] = encode_document(model, docs[i]);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return streams;
}

} // namespace detail

/// Runs one tokenizer over a corpus and fills every computed field of the
/// report. `params_b` and external scores are left for the caller.
inline EvalReport evaluate_tokenizer(const TokenizerModel& model, const Corpus& corpus,
                                     const turkval::TokenValidator& validator, const EvalOptions& options = {},
                                     std::string model_name = {}) {
    if (corpus.empty()) throw Error("empty corpus");

    EvalReport report;
    report.model_name = std::move(model_name);
    report.vocab_size = model.vocab_size();

    std::vector<std::vector<Token>> streams;
    if (options.workers <= 1) {
        const auto start = std::chrono::steady_clock::now();
        streams = detail::encode_all(model, corpus, 1);
        const auto stop = std::chrono::steady_clock::now();
        report.processing_time_s = std::chrono::duration<double>(stop - start).count();
    } else {
        streams = detail::encode_all(model, corpus, options.workers);
    }

    std::map<TokenId, std::size_t> known;
    std::map<std::string, std::size_t> unknown;
    for (const auto& stream : streams) {
        report.total_tokens += stream.size();
        for (const auto& t : stream) {
            if (t.is_unknown()) ++unknown[t.unknown];
            else ++known[t.id];
        }
    }
    report.unique_tokens = known.size();

    std::vector<TokenCount> distinct;
    distinct.reserve(known.size() + unknown.size());
    for (const auto& [id, n] : known) distinct.push_back({decode_token(model, id), n});
    for (const auto& [bytes, n] : unknown) distinct.push_back({decode_token(model, Token{kUnknownId, bytes}), n});

    if (!distinct.empty()) {
        const auto pct = compute_percentages(distinct, validator, options.weighting, options.letters_only);
        report.pct_tr = pct.pct_tr;
        report.pct_pure = pct.pct_pure;
    }

    const auto stats = corpus_stats(corpus);
    if (stats.word_count > 0) report.fertility = fertility(report.total_tokens, stats.word_count);
    return report;
}

} // namespace tokeval
