// tokeval: tokenizer evaluation command line.
//
// Exit codes: 0 success, 1 user/input error, 2 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tokeval/tokeval.hpp"

#ifndef TOKEVAL_DATA_DIR
#define TOKEVAL_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace tokeval;

namespace {

struct GlobalOptions {
    std::string lexicon;
    std::string affixes;
    std::string wordlist;
    std::string weighting = "unique";
    std::string purity_mode = "single";
    bool letters_only = false;
    std::vector<std::string> text_fields{"text"};
    std::string format;
    std::string out;
    std::string number_style = "plain";
};

fs::path data_dir() {
    if (const char* env = std::getenv("TOKEVAL_DATA")) return env;
    return TOKEVAL_DATA_DIR;
}

void write_output(const std::string& content, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write '" + out + "'");
    f << content;
}

turkval::TurkishValidator make_validator(const GlobalOptions& g, const std::optional<fs::path>& lexicon = {},
                                         const std::optional<fs::path>& affixes = {},
                                         const std::optional<fs::path>& wordlist = {},
                                         std::optional<turkval::PurityMode> mode = {}) {
    auto pick = [](const std::string& flag, const std::optional<fs::path>& cfg, const char* bundled) -> std::optional<fs::path> {
        if (!flag.empty()) return fs::path(flag);
        if (cfg) return cfg;
        if (bundled) return data_dir() / bundled;
        return std::nullopt;
    };
    const auto lex_path = pick(g.lexicon, lexicon, "roots.tsv");
    const auto aff_path = pick(g.affixes, affixes, "affixes.tsv");
    const auto words_path = pick(g.wordlist, wordlist, nullptr);
    for (const auto& p : {lex_path, aff_path, words_path}) {
        if (p && !fs::exists(*p)) throw Error("file not found: '" + p->string() + "'");
    }
    auto words = words_path ? turkval::WordList::load(*words_path) : turkval::WordList{};
    return turkval::TurkishValidator(turkval::RootLexicon::load(*lex_path), turkval::AffixInventory::load(*aff_path),
                                     std::move(words), mode.value_or(turkval::parse_purity_mode(g.purity_mode)));
}

CorpusFormat guess_format(const std::string& flag, const fs::path& path) {
    if (!flag.empty()) return parse_corpus_format(flag);
    return path.extension() == ".jsonl" ? CorpusFormat::jsonl : CorpusFormat::plain;
}

std::map<std::string, double> parse_scores(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("--score expects NAME=VALUE, got '" + item + "'");
        out[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string read_file(const std::string& path) {
    if (!fs::exists(path)) throw Error("file not found: '" + path + "'");
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tokenizer evaluation toolkit: token counts, fertility, %TR, %Pure and correlations"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--lexicon", g.lexicon, "Root lexicon TSV (default: bundled)");
    app.add_option("--affixes", g.affixes, "Affix inventory TSV (default: bundled)");
    app.add_option("--wordlist", g.wordlist, "Whole-word list, one word per line");
    app.add_option("--weighting", g.weighting, "unique|frequency")->check(CLI::IsMember({"unique", "frequency"}));
    app.add_option("--purity-mode", g.purity_mode, "single|extended")->check(CLI::IsMember({"single", "extended"}));
    app.add_flag("--letters-only", g.letters_only, "Restrict %TR/%Pure denominators to letter tokens");
    app.add_option("--text-fields", g.text_fields, "JSONL fields joined into document text")->delimiter(',');
    app.add_option("--format", g.format, "json|csv|md")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--out", g.out, "Output path (default: stdout)");
    app.add_option("--number-style", g.number_style, "plain|tr decimal style for Markdown")->check(CLI::IsMember({"plain", "tr"}));

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one tokenizer over a corpus");
    std::string ev_tokenizer, ev_corpus, ev_corpus_format, ev_name;
    std::optional<double> ev_params;
    std::vector<std::string> ev_scores;
    std::size_t ev_workers = 1;
    evaluate->add_option("--tokenizer", ev_tokenizer, "Tokenizer JSON")->required();
    evaluate->add_option("--corpus", ev_corpus, "Corpus file (.jsonl or plain text) or directory")->required();
    evaluate->add_option("--corpus-format", ev_corpus_format, "jsonl|plain (default from extension)");
    evaluate->add_option("--name", ev_name, "Model name (default: tokenizer file stem)");
    evaluate->add_option("--params-b", ev_params, "Model parameters in billions");
    evaluate->add_option("--score", ev_scores, "External score NAME=VALUE (repeatable)");
    evaluate->add_option("--workers", ev_workers, "Encoding workers; more than 1 disables timing");

    // compare
    auto* compare = app.add_subcommand("compare", "Evaluate every entry of a comparison config");
    std::string cmp_config, cmp_table;
    std::size_t cmp_workers = 0;
    compare->add_option("--config", cmp_config, "Comparison config or report fixture JSON")->required();
    compare->add_option("--table", cmp_table, "Also write the merged metric table CSV here");
    compare->add_option("--workers", cmp_workers, "Override encoding workers");

    // correlate
    auto* correlate = app.add_subcommand("correlate", "Pearson correlation matrix over metric columns");
    std::string cor_table, cor_svg, cor_title = "Correlation matrix";
    std::string cor_columns;
    correlate->add_option("--table", cor_table, "Metric table CSV")->required();
    correlate->add_option("--columns", cor_columns, "Comma-separated columns (default: all complete columns)");
    correlate->add_option("--svg", cor_svg, "Write an SVG heat map");
    correlate->add_option("--title", cor_title, "Heat map title");

    // scatter
    auto* scatter = app.add_subcommand("scatter", "Bubble scatter plot of two metric columns");
    std::string sc_table, sc_x, sc_y, sc_size, sc_color, sc_title;
    scatter->add_option("--table", sc_table, "Metric table CSV")->required();
    scatter->add_option("--x", sc_x, "X column")->required();
    scatter->add_option("--y", sc_y, "Y column")->required();
    scatter->add_option("--size", sc_size, "Marker area column");
    scatter->add_option("--color", sc_color, "Marker color column");
    scatter->add_option("--title", sc_title, "Plot title");

    // segment / check-token
    auto* segment = app.add_subcommand("segment", "Print every root+affix parse of a word");
    std::vector<std::string> seg_words;
    segment->add_option("words", seg_words, "Words")->required();

    auto* check = app.add_subcommand("check-token", "Print the (TR-valid, pure) verdict for tokens");
    std::vector<std::string> check_tokens;
    check->add_option("tokens", check_tokens, "Tokens")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "Corpus document, character and word counts");
    std::string st_corpus, st_corpus_format;
    stats->add_option("--corpus", st_corpus, "Corpus file or directory")->required();
    stats->add_option("--corpus-format", st_corpus_format, "jsonl|plain (default from extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const NumberStyle style = parse_number_style(g.number_style);

        if (*evaluate) {
            if (!fs::exists(ev_tokenizer)) throw Error("file not found: '" + ev_tokenizer + "'");
            if (!fs::exists(ev_corpus)) throw Error("file not found: '" + ev_corpus + "'");
            const auto model = load_tokenizer(ev_tokenizer);
            const auto corpus = load_corpus(ev_corpus, guess_format(ev_corpus_format, ev_corpus), g.text_fields);
            const auto validator = make_validator(g);
            EvalOptions opts{parse_weighting(g.weighting), g.letters_only, ev_workers};
            auto report = evaluate_tokenizer(model, corpus, validator, opts,
                                             ev_name.empty() ? fs::path(ev_tokenizer).stem().string() : ev_name);
            report.params_b = ev_params;
            report.external_scores = parse_scores(ev_scores);
            const auto format = parse_report_format(g.format.empty() ? "json" : g.format);
            write_output(render_reports({report}, format, style), g.out);
        } else if (*compare) {
            const auto j = read_json_file(cmp_config);
            std::vector<EvalReport> reports;
            if (j.contains("reports")) {
                reports = fixture_from_json(j).reports;
            } else {
                const auto cfg = config_from_json(j, fs::path(cmp_config).parent_path());
                const auto corpus = load_corpus(cfg.corpus, cfg.corpus_format, cfg.text_fields);
                const auto validator = make_validator(g, cfg.lexicon, cfg.affixes, cfg.wordlist, cfg.purity_mode);
                EvalOptions opts = cfg.options;
                if (cmp_workers > 0) opts.workers = cmp_workers;
                for (const auto& entry : cfg.entries) {
                    try {
                        const auto model = load_tokenizer(entry.tokenizer_file);
                        auto report = evaluate_tokenizer(model, corpus, validator, opts, entry.name);
                        report.params_b = entry.params_b;
                        report.external_scores = entry.external_scores;
                        reports.push_back(std::move(report));
                    } catch (const Error& e) {
                        throw Error("entry '" + entry.name + "': " + e.what());
                    }
                }
            }
            if (!cmp_table.empty()) write_output(reports_to_csv(reports), cmp_table);
            const auto format = parse_report_format(g.format.empty() ? "md" : g.format);
            write_output(render_reports(reports, format, style), g.out);
        } else if (*correlate) {
            auto table = MetricTable::from_csv(read_file(cor_table));
            table = cor_columns.empty() ? table.complete_columns() : table.select(split_list(cor_columns));
            const auto m = correlation_matrix(table);
            if (!cor_svg.empty()) write_output(svg::render_heatmap(m, cor_title), cor_svg);
            write_output(g.format == "json" ? to_json(m).dump(2) + "\n" : to_csv(m), g.out);
        } else if (*scatter) {
            const auto table = MetricTable::from_csv(read_file(sc_table));
            svg::ScatterSpec spec{sc_x, sc_y, std::nullopt, std::nullopt, sc_title};
            if (!sc_size.empty()) spec.size = sc_size;
            if (!sc_color.empty()) spec.color = sc_color;
            write_output(svg::render_scatter(table, spec), g.out);
        } else if (*segment) {
            const auto validator = make_validator(g);
            std::string out;
            for (const auto& w : seg_words) {
                const auto parses = validator.segment(w);
                const std::string prefix = seg_words.size() > 1 ? w + ": " : "";
                if (parses.empty()) out += prefix + "no parse\n";
                for (const auto& p : parses) out += prefix + p.to_string() + "\n";
            }
            write_output(out, g.out);
        } else if (*check) {
            const auto validator = make_validator(g);
            std::string out;
            for (const auto& t : check_tokens) {
                const std::string prefix = check_tokens.size() > 1 ? t + ": " : "";
                out += prefix + "tr=" + (validator.is_valid_word(t) ? "true" : "false") +
                       " pure=" + (validator.is_pure_token(t) ? "true" : "false") + "\n";
            }
            write_output(out, g.out);
        } else if (*stats) {
            const auto corpus = load_corpus(st_corpus, guess_format(st_corpus_format, st_corpus), g.text_fields);
            const auto s = corpus_stats(corpus);
            std::string out;
            if (g.format == "json") {
                out = nlohmann::json{{"document_count", s.document_count}, {"char_count", s.char_count}, {"word_count", s.word_count}}.dump(2) + "\n";
            } else if (g.format == "csv") {
                out = "document_count,char_count,word_count\n" + std::to_string(s.document_count) + "," +
                      std::to_string(s.char_count) + "," + std::to_string(s.word_count) + "\n";
            } else {
                out = "documents=" + std::to_string(s.document_count) + " chars=" + std::to_string(s.char_count) +
                      " words=" + std::to_string(s.word_count) + "\n";
            }
            write_output(out, g.out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
