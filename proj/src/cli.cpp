#include "ll1/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ll1/case_study.hpp"
#include "ll1/driver.hpp"
#include "ll1/grammar.hpp"
#include "ll1/lexicon.hpp"
#include "ll1/sets.hpp"
#include "ll1/table.hpp"
#include "ll1/transform.hpp"

namespace ll1::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;
constexpr int kInputError = 3;
constexpr int kGrammarError = 4;

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw FileError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

/// Dictionary files: XML when the content leads with '<', TSV otherwise.
Lexicon load_lexicon_file(const std::string& path) {
    std::string text = read_file(path);
    std::size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r'))
        ++i;
    if (i < text.size() && text[i] == '<') return load_lexicon_xml(text);
    return load_lexicon_tsv(text);
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(std::move(w));
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string render_expected(const std::vector<std::string>& expected) {
    return "{" + join(expected, ", ") + "}";
}

void require_no_left_recursion(const Grammar& g) {
    auto cycles = detect_left_recursion(g);
    if (cycles.empty()) return;
    std::string msg = "left recursion detected:";
    for (const auto& cycle : cycles) {
        msg += " {";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) msg += ", ";
            msg += g.name(cycle[i]);
        }
        msg += "}";
    }
    throw GrammarError(msg);
}

/// The table the driver should run against: loaded from `table_path` when
/// given, otherwise built from the grammar (which must then be free of left
/// recursion). Returns the grammar instance the table's productions index
/// into.
struct DriverSetup {
    Grammar grammar;
    ParseTable table;
};

DriverSetup make_driver_setup(Grammar g, const std::string& table_path) {
    if (!table_path.empty()) {
        LoadedTable lt = load_table(read_file(table_path), g);
        return {std::move(lt.grammar), std::move(lt.table)};
    }
    require_no_left_recursion(g);
    FirstSets fs = compute_first(g);
    FollowSets fl = compute_follow(g, fs);
    BuildResult built = build_table(g, fs, fl);
    return {std::move(g), std::move(built.table)};
}

std::string format_rate(std::size_t accepted, std::size_t total) {
    if (total == 0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * static_cast<double>(accepted) /
                                               static_cast<double>(total));
    return buf;
}

json trace_to_json(const std::vector<MoveRecord>& moves) {
    json rows = json::array();
    for (const MoveRecord& m : moves)
        rows.push_back({{"stack", join(m.stack, " ")},
                        {"input", join(m.input, " ")},
                        {"action", m.action}});
    return rows;
}

int cmd_analyze(const std::string& grammar_path, std::ostream& out) {
    Grammar g = parse_grammar_text(read_file(grammar_path));
    FirstSets fs = compute_first(g);
    FollowSets fl = compute_follow(g, fs);
    out << format_first_sets(g, fs) << format_follow_sets(g, fl);
    return kOk;
}

int cmd_factor(const std::string& grammar_path, std::ostream& out) {
    Grammar g = parse_grammar_text(read_file(grammar_path));
    out << serialize_grammar(left_factor(g));
    return kOk;
}

int cmd_table(const std::string& grammar_path, bool strict, const std::string& format,
              std::ostream& out, std::ostream& err) {
    Grammar g = parse_grammar_text(read_file(grammar_path));
    require_no_left_recursion(g);
    FirstSets fs = compute_first(g);
    FollowSets fl = compute_follow(g, fs);
    BuildResult built = build_table(g, fs, fl);

    if (format == "json") {
        json doc;
        doc["start"] = g.name(g.start());
        json rows = json::array();
        for (SymbolId r : built.table.rows()) rows.push_back(g.name(r));
        doc["rows"] = std::move(rows);
        json columns = json::array();
        for (SymbolId c : built.table.columns()) columns.push_back(g.name(c));
        columns.push_back("$");
        doc["columns"] = std::move(columns);
        json cells = json::object();
        for (std::size_t r = 0; r < built.table.rows().size(); ++r) {
            json row = json::object();
            for (std::size_t c = 0; c <= built.table.end_column(); ++c) {
                const auto& cell = built.table.cell(r, c);
                if (cell.empty()) continue;
                json entries = json::array();
                for (const CellEntry& e : cell)
                    entries.push_back(g.render_rhs(g.productions()[e.production].rhs));
                std::string col_name =
                    c == built.table.end_column() ? "$" : g.name(built.table.columns()[c]);
                row[col_name] = std::move(entries);
            }
            if (!row.empty()) cells[g.name(built.table.rows()[r])] = std::move(row);
        }
        doc["cells"] = std::move(cells);
        json conflicts = json::array();
        for (const ConflictEntry& e : built.conflicts.entries) {
            json productions = json::array();
            for (std::size_t idx : e.productions) productions.push_back(g.render(g.productions()[idx]));
            conflicts.push_back({{"row", g.name(e.row)},
                                 {"column", e.column ? g.name(*e.column) : "$"},
                                 {"kind", std::string(to_string(e.kind))},
                                 {"productions", std::move(productions)}});
        }
        doc["conflicts"] = std::move(conflicts);
        out << doc.dump(2) << "\n";
    } else {
        out << serialize_table(built.table, g);
        if (!built.conflicts.empty()) out << "\n" << format_conflicts(built.conflicts, g);
    }

    if (strict && !built.conflicts.empty()) {
        err << "table has " << built.conflicts.entries.size() << " conflicted cells (strict mode)\n";
        return kGrammarError;
    }
    return kOk;
}

int cmd_diff_paper(const std::string& data_dir, std::ostream& out) {
    CaseStudy cs = load_case_study(data_dir);
    out << format_findings(consistency_report(cs));
    return kOk;
}

int cmd_parse(const std::string& grammar_path, const std::string& table_path,
              const std::string& lexicon_path, bool tags_mode, const std::string& policy_name,
              bool want_trace, bool want_tree, const std::string& format,
              const std::string& input, std::ostream& out, std::ostream& err) {
    DriverSetup setup = make_driver_setup(parse_grammar_text(read_file(grammar_path)), table_path);

    std::vector<std::string> tags;
    std::vector<std::string> surfaces;
    const std::vector<std::string>* surfaces_ptr = nullptr;
    if (tags_mode) {
        tags = split_words(input);
    } else {
        if (lexicon_path.empty()) {
            err << "raw-sentence input requires --lexicon (or pass --tags)\n";
            return kUsage;
        }
        Lexicon lex = load_lexicon_file(lexicon_path);
        auto sentences = split_sentences(input);
        if (sentences.size() != 1) {
            err << "expected exactly one sentence, got " << sentences.size()
                << " (batch handles multi-sentence input)\n";
            return kInputError;
        }
        TaggedSentence tagged = tag_sentence(lex, sentences.front());
        tags = tagged.tags;
        for (const Token& t : tagged.tokens) surfaces.push_back(t.surface);
        surfaces_ptr = &surfaces;
    }

    DriverPolicy policy;
    policy.mode =
        policy_name == "backtrack" ? DriverMode::backtracking : DriverMode::deterministic;
    ParseResult result = parse_predictive(setup.table, setup.grammar, tags, policy, surfaces_ptr);

    if (format == "json") {
        json doc;
        if (result.outcome.accepted) {
            doc["verdict"] = "accepted";
        } else {
            const RejectInfo& r = *result.outcome.reject;
            doc["verdict"] = "rejected";
            doc["reason"] = std::string(to_string(r.reason));
            doc["position"] = r.position;
            doc["stack_top"] = r.stack_top;
            doc["expected"] = r.expected;
        }
        if (want_trace) doc["trace"] = trace_to_json(result.moves);
        if (want_tree && result.tree) doc["tree"] = tree_to_bracketed(*result.tree);
        out << doc.dump(2) << "\n";
    } else {
        if (result.outcome.accepted) {
            out << "accepted\n";
        } else {
            const RejectInfo& r = *result.outcome.reject;
            out << "rejected: " << to_string(r.reason) << " at token " << r.position
                << ", expected " << render_expected(r.expected) << "\n";
        }
        if (want_trace) out << format_trace(result.moves);
        if (want_tree && result.tree) out << tree_to_bracketed(*result.tree) << "\n";
    }
    return result.outcome.accepted ? kOk : kRejected;
}

int cmd_tag(const std::string& lexicon_path, const std::string& input, std::ostream& out,
            std::ostream& err) {
    Lexicon lex = load_lexicon_file(lexicon_path);
    auto sentences = split_sentences(input);
    if (sentences.size() != 1) {
        err << "expected exactly one sentence, got " << sentences.size() << "\n";
        return kInputError;
    }
    TaggedSentence tagged = tag_sentence(lex, sentences.front());
    for (std::size_t i = 0; i < tagged.tokens.size(); ++i)
        out << tagged.tokens[i].surface << "\t" << tagged.tags[i] << "\n";
    return kOk;
}

int cmd_batch(const std::string& grammar_path, const std::string& table_path,
              const std::string& lexicon_path, bool quiet_reject, const std::string& format,
              const std::string& corpus_path, std::ostream& out, std::ostream& err) {
    DriverSetup setup = make_driver_setup(parse_grammar_text(read_file(grammar_path)), table_path);
    Lexicon lex = load_lexicon_file(lexicon_path);
    std::vector<CorpusEntry> corpus = parse_corpus(read_file(corpus_path));

    struct Tally {
        std::size_t total = 0;
        std::size_t accepted = 0;
    };
    Tally raw, tagseq;
    bool all_matched = true;
    json json_entries = json::array();

    for (std::size_t n = 0; n < corpus.size(); ++n) {
        const CorpusEntry& e = corpus[n];
        std::vector<std::string> tags;
        if (e.kind == EntryKind::raw_sentence) {
            try {
                tags = tag_sentence(lex, e.payload).tags;
            } catch (const UnknownWordError& uw) {
                err << "corpus entry " << n + 1 << ": " << uw.what() << "\n";
                return kInputError;
            }
        } else {
            tags = split_words(e.payload);
        }

        bool accepted = false;
        std::string reason;
        try {
            ParseResult result = parse_predictive(setup.table, setup.grammar, tags);
            accepted = result.outcome.accepted;
            if (!accepted) reason = to_string(result.outcome.reject->reason);
        } catch (const UnknownTerminalError& ut) {
            accepted = false;  // tags outside the grammar cannot be parsed
            reason = ut.what();
        }

        Tally& tally = e.kind == EntryKind::raw_sentence ? raw : tagseq;
        tally.total++;
        if (accepted) tally.accepted++;
        bool matched = accepted == e.expect_accept;
        if (!matched) all_matched = false;

        if (format == "json") {
            json entry = {{"kind", std::string(to_string(e.kind))},
                          {"payload", e.payload},
                          {"expected", e.expect_accept ? "accept" : "reject"},
                          {"verdict", accepted ? "accept" : "reject"},
                          {"matched", matched}};
            if (!reason.empty()) entry["reason"] = reason;
            if (!e.provenance.empty()) entry["provenance"] = e.provenance;
            json_entries.push_back(std::move(entry));
        } else if (matched && !accepted && quiet_reject) {
            // suppressed: an expected rejection with --quiet-reject
        } else {
            out << (matched ? "ok" : "MISMATCH") << "\t" << (accepted ? "accept" : "reject")
                << "\t" << to_string(e.kind) << "\t" << e.payload << "\n";
        }
    }

    Tally all{raw.total + tagseq.total, raw.accepted + tagseq.accepted};
    if (format == "json") {
        json doc;
        doc["entries"] = std::move(json_entries);
        json totals = json::array();
        for (auto [label, tally] : {std::pair{"raw-sentence", raw}, {"tag-sequence", tagseq},
                                    {"all", all}})
            totals.push_back({{"label", label},
                              {"total", tally.total},
                              {"accepted", tally.accepted},
                              {"rate", format_rate(tally.accepted, tally.total)}});
        doc["totals"] = std::move(totals);
        doc["all_matched"] = all_matched;
        out << doc.dump(2) << "\n";
    } else {
        out << "formula: A = (D/I) x 100\n";
        for (auto [label, tally] : {std::pair{"raw-sentence", raw}, {"tag-sequence", tagseq},
                                    {"all", all}}) {
            out << label << ": I=" << tally.total << " D=" << tally.accepted
                << " A=" << format_rate(tally.accepted, tally.total);
            if (tally.total) out << "%";
            out << "\n";
        }
    }
    return all_matched ? kOk : kRejected;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"LL(1) predictive-parser toolkit"};
    app.require_subcommand(1);

    std::string grammar_path, table_path, lexicon_path, data_dir, corpus_path, input;
    std::string policy = "deterministic";
    std::string format = "text";
    bool strict = false, tags_mode = false, want_trace = false, want_tree = false,
         quiet_reject = false;
    auto format_opt = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    CLI::App* analyze = app.add_subcommand("analyze", "Print FIRST and FOLLOW sets of a grammar");
    analyze->add_option("grammar", grammar_path, "Grammar file")->required();

    CLI::App* factor = app.add_subcommand("factor", "Print the left-factored grammar");
    factor->add_option("grammar", grammar_path, "Grammar file")->required();

    CLI::App* table = app.add_subcommand("table", "Build and print the predictive parse table");
    table->add_option("grammar", grammar_path, "Grammar file")->required();
    table->add_flag("--strict", strict, "Exit 4 when the table has conflicts");
    format_opt(table);

    CLI::App* diff_paper = app.add_subcommand(
        "diff-paper", "Report disagreements between computed artifacts and the published ones");
    diff_paper->add_option("--data", data_dir, "Fixture directory")
        ->default_val(default_data_dir());

    CLI::App* parse = app.add_subcommand("parse", "Parse one sentence or tag sequence");
    parse->add_option("--grammar", grammar_path, "Grammar file")->required();
    parse->add_option("--table", table_path, "Parse-table file (default: build from grammar)");
    parse->add_option("--lexicon", lexicon_path, "Dictionary file for raw sentences");
    parse->add_flag("--tags", tags_mode, "Input is a space-separated tag sequence");
    parse->add_option("--policy", policy, "Cell-choice policy")
        ->check(CLI::IsMember({"deterministic", "backtrack"}))
        ->capture_default_str();
    parse->add_flag("--trace", want_trace, "Print the move trace");
    parse->add_flag("--tree", want_tree, "Print the parse tree on acceptance");
    format_opt(parse);
    parse->add_option("input", input, "Sentence or tag sequence")->required();

    CLI::App* tag = app.add_subcommand("tag", "Print word<TAB>tag lines for one sentence");
    tag->add_option("--lexicon", lexicon_path, "Dictionary file")->required();
    tag->add_option("input", input, "Sentence")->required();

    CLI::App* batch = app.add_subcommand("batch", "Check every corpus entry against its verdict");
    batch->add_option("--grammar", grammar_path, "Grammar file")->required();
    batch->add_option("--table", table_path, "Parse-table file (default: build from grammar)");
    batch->add_option("--lexicon", lexicon_path, "Dictionary file")->required();
    batch->add_flag("--quiet-reject", quiet_reject, "Omit entries whose expected rejection matched");
    format_opt(batch);
    batch->add_option("corpus", corpus_path, "Corpus file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out, help_err;
        int code = app.exit(e, help_out, help_err);
        out << help_out.str();
        err << help_err.str();
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(grammar_path, out);
        if (app.got_subcommand(factor)) return cmd_factor(grammar_path, out);
        if (app.got_subcommand(table)) return cmd_table(grammar_path, strict, format, out, err);
        if (app.got_subcommand(diff_paper)) return cmd_diff_paper(data_dir, out);
        if (app.got_subcommand(parse))
            return cmd_parse(grammar_path, table_path, lexicon_path, tags_mode, policy,
                             want_trace, want_tree, format, input, out, err);
        if (app.got_subcommand(tag)) return cmd_tag(lexicon_path, input, out, err);
        if (app.got_subcommand(batch))
            return cmd_batch(grammar_path, table_path, lexicon_path, quiet_reject, format,
                             corpus_path, out, err);
    } catch (const GrammarError& e) {
        err << "grammar error: " << e.what();
        if (e.line) err << " (line " << e.line << ")";
        err << "\n";
        return kGrammarError;
    } catch (const UnknownWordError& e) {
        err << e.what() << "\n";
        return kInputError;
    } catch (const UnknownTerminalError& e) {
        err << e.what() << "\n";
        return kInputError;
    } catch (const LexiconError& e) {
        err << "lexicon error: " << e.what();
        if (e.line) err << " (line " << e.line << ")";
        err << "\n";
        return kInputError;
    } catch (const CaseStudyError& e) {
        err << e.what() << "\n";
        return kInputError;
    } catch (const FileError& e) {
        err << e.what() << "\n";
        return kInputError;
    }
    return kUsage;  // unreachable: require_subcommand guarantees a branch
}

}  // namespace ll1::cli
