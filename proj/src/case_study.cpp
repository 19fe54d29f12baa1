#include "ll1/case_study.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ll1 {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Sorted copy with `eps` and `$` after the ordinary members.
std::vector<std::string> canonical_members(std::vector<std::string> members) {
    auto special = [](const std::string& m) { return m == "eps" || m == "$"; };
    std::sort(members.begin(), members.end(), [&](const std::string& a, const std::string& b) {
        if (special(a) != special(b)) return special(b);
        return a < b;
    });
    return members;
}

std::string render_member_set(std::vector<std::string> members) {
    members = canonical_members(std::move(members));
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ", ";
        out += members[i];
    }
    out += "}";
    return out;
}

std::string render_cell(const std::vector<std::string>& rhs_texts) {
    if (rhs_texts.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < rhs_texts.size(); ++i) {
        if (i) out += " / ";
        out += rhs_texts[i];
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw CaseStudyError("cannot read fixture file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

/// Printed members of one set, validated against the grammar: terminals
/// plus `eps` (FIRST) or `$` (FOLLOW).
std::vector<std::string> checked_members(const PrintedSet& ps, const Grammar& g,
                                         std::string_view kind) {
    std::string_view special = kind == "FIRST" ? "eps" : "$";
    for (const std::string& m : ps.members) {
        if (m == special) continue;
        auto id = g.find(m);
        if (!id || !g.is_terminal(*id))
            throw CaseStudyError("printed " + std::string(kind) + "(" + ps.symbol +
                                 ") contains '" + m + "', which is not a grammar terminal");
    }
    return ps.members;
}

}  // namespace

std::string_view to_string(EntryKind kind) {
    return kind == EntryKind::raw_sentence ? "raw-sentence" : "tag-sequence";
}

std::string_view to_string(FindingSubject subject) {
    switch (subject) {
        case FindingSubject::first_set: return "first-set";
        case FindingSubject::follow_set: return "follow-set";
        case FindingSubject::table_cell: return "table-cell";
        case FindingSubject::production: return "production";
    }
    return "?";
}

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
    std::vector<CorpusEntry> entries;
    std::vector<std::string> pending;  // comment block gathering toward the next entry

    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos <= text.size();) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (pos > text.size() && line.empty()) break;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view stripped = trim(line);
        if (stripped.empty()) {
            pending.clear();  // blank line detaches any comment block above it
            continue;
        }
        if (stripped.front() == '#') {
            stripped.remove_prefix(1);
            if (!stripped.empty() && stripped.front() == ' ') stripped.remove_prefix(1);
            pending.emplace_back(stripped);
            continue;
        }

        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos)
            throw CaseStudyError("corpus line " + std::to_string(line_no) +
                                 ": expected kind<TAB>verdict<TAB>payload");
        std::string_view kind = line.substr(0, t1);
        std::string_view verdict = line.substr(t1 + 1, t2 - t1 - 1);
        std::string_view payload = trim(line.substr(t2 + 1));

        CorpusEntry e;
        if (kind == "S") {
            e.kind = EntryKind::raw_sentence;
        } else if (kind == "T") {
            e.kind = EntryKind::tag_sequence;
        } else {
            throw CaseStudyError("corpus line " + std::to_string(line_no) + ": unknown kind '" +
                                 std::string(kind) + "' (expected S or T)");
        }
        if (verdict == "accept") {
            e.expect_accept = true;
        } else if (verdict == "reject") {
            e.expect_accept = false;
        } else {
            throw CaseStudyError("corpus line " + std::to_string(line_no) +
                                 ": unknown verdict '" + std::string(verdict) +
                                 "' (expected accept or reject)");
        }
        if (payload.empty())
            throw CaseStudyError("corpus line " + std::to_string(line_no) + ": empty payload");
        e.payload = std::string(payload);
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (i) e.provenance += ' ';
            e.provenance += pending[i];
        }
        pending.clear();
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<PrintedSet> parse_printed_sets(std::string_view text, std::string_view kind) {
    std::vector<PrintedSet> sets;

    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos <= text.size();) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (pos > text.size() && line.empty()) break;
        if (line.empty() || line.front() == '#') continue;

        auto fail = [&](const std::string& what) -> CaseStudyError {
            return CaseStudyError("printed-sets line " + std::to_string(line_no) + ": " + what);
        };
        if (!line.starts_with(kind) || line.size() <= kind.size() || line[kind.size()] != '(')
            throw fail("expected '" + std::string(kind) + "(symbol) = {...}'");
        line.remove_prefix(kind.size() + 1);
        std::size_t close = line.find(')');
        if (close == std::string_view::npos) throw fail("missing ')'");
        PrintedSet ps;
        ps.symbol = std::string(trim(line.substr(0, close)));
        if (ps.symbol.empty()) throw fail("empty symbol name");
        line = trim(line.substr(close + 1));
        if (!line.starts_with('=')) throw fail("missing '='");
        line = trim(line.substr(1));
        if (!line.starts_with('{') || !line.ends_with('}')) throw fail("missing braces");
        std::string_view body = trim(line.substr(1, line.size() - 2));

        while (!body.empty()) {
            std::size_t comma = body.find(',');
            std::string_view member = trim(body.substr(0, comma));
            if (member.empty()) throw fail("empty member");
            if (std::find(ps.members.begin(), ps.members.end(), member) != ps.members.end())
                throw fail("duplicate member '" + std::string(member) + "'");
            ps.members.emplace_back(member);
            if (comma == std::string_view::npos) break;
            body = trim(body.substr(comma + 1));
            if (body.empty()) throw fail("trailing comma");
        }

        for (const PrintedSet& prev : sets)
            if (prev.symbol == ps.symbol) throw fail("duplicate entry for '" + ps.symbol + "'");
        sets.push_back(std::move(ps));
    }
    return sets;
}

std::string default_data_dir() { return LL1_DEFAULT_DATA_DIR; }

CaseStudy load_case_study(const std::string& dir) {
    std::string base = dir;
    if (!base.empty() && base.back() != '/') base += '/';

    Grammar grammar = parse_grammar_text(read_file(base + "grammar.g"));
    FirstSets first = compute_first(grammar);
    FollowSets follow = compute_follow(grammar, first);
    BuildResult computed = build_table(grammar, first, follow);
    LoadedTable transcribed = load_table(read_file(base + "printed_table.tbl"), grammar);
    Lexicon lexicon = merge_lexicons(load_lexicon_xml(read_file(base + "lexicon.xml")),
                                     load_lexicon_tsv(read_file(base + "lexicon.tsv")));
    std::vector<CorpusEntry> corpus = parse_corpus(read_file(base + "corpus.tsv"));
    std::vector<PrintedSet> printed_first =
        parse_printed_sets(read_file(base + "printed_first_sets.txt"), "FIRST");
    std::vector<PrintedSet> printed_follow =
        parse_printed_sets(read_file(base + "printed_follow_sets.txt"), "FOLLOW");

    return {std::move(grammar),     std::move(first),         std::move(follow),
            std::move(computed),    std::move(transcribed),   std::move(lexicon),
            std::move(corpus),      std::move(printed_first), std::move(printed_follow)};
}

std::vector<ConsistencyFinding> consistency_report(const CaseStudy& cs) {
    const Grammar& g = cs.grammar;
    std::vector<ConsistencyFinding> findings;

    // Printed sets vs computed sets, in grammar nonterminal order. Every
    // nonterminal must have exactly one printed line.
    auto printed_for = [&](const std::vector<PrintedSet>& sets, SymbolId nt,
                           std::string_view kind) -> const PrintedSet& {
        for (const PrintedSet& ps : sets)
            if (ps.symbol == g.name(nt)) return ps;
        throw CaseStudyError("printed " + std::string(kind) + " sets lack an entry for '" +
                             g.name(nt) + "'");
    };
    for (const std::vector<PrintedSet>* sets : {&cs.printed_first, &cs.printed_follow}) {
        for (const PrintedSet& ps : *sets) {
            auto id = g.find(ps.symbol);
            if (!id || !g.is_nonterminal(*id))
                throw CaseStudyError("printed sets entry '" + ps.symbol +
                                     "' is not a grammar nonterminal");
        }
    }

    for (SymbolId nt : g.nonterminals()) {
        std::vector<std::string> computed;
        for (SymbolId t : cs.first.of(nt)) computed.push_back(g.name(t));
        if (cs.first.nullable.contains(nt)) computed.emplace_back("eps");
        auto printed = checked_members(printed_for(cs.printed_first, nt, "FIRST"), g, "FIRST");
        if (canonical_members(printed) != canonical_members(computed))
            findings.push_back({FindingSubject::first_set, g.name(nt),
                                render_member_set(std::move(printed)),
                                render_member_set(std::move(computed))});
    }
    for (SymbolId nt : g.nonterminals()) {
        std::vector<std::string> computed;
        for (SymbolId t : cs.follow.of(nt)) computed.push_back(g.name(t));
        if (cs.follow.has_end(nt)) computed.emplace_back("$");
        auto printed = checked_members(printed_for(cs.printed_follow, nt, "FOLLOW"), g, "FOLLOW");
        if (canonical_members(printed) != canonical_members(computed))
            findings.push_back({FindingSubject::follow_set, g.name(nt),
                                render_member_set(std::move(printed)),
                                render_member_set(std::move(computed))});
    }

    TableDiff diff =
        diff_tables(cs.computed.table, g, cs.transcribed.table, cs.transcribed.grammar);
    for (const TableDiffEntry& d : diff.entries)
        findings.push_back({FindingSubject::table_cell, "(" + d.row + ", " + d.column + ")",
                            render_cell(d.right), render_cell(d.left)});

    for (std::size_t idx : cs.transcribed.synthetic_productions) {
        const Production& p = cs.transcribed.grammar.productions()[idx];
        findings.push_back({FindingSubject::production, cs.transcribed.grammar.name(p.lhs),
                            cs.transcribed.grammar.render(p), "absent from the grammar"});
    }
    return findings;
}

std::string format_findings(std::span<const ConsistencyFinding> findings) {
    std::string out;
    for (const ConsistencyFinding& f : findings) {
        out += to_string(f.subject);
        out += ' ';
        out += f.location;
        out += ": printed=";
        out += f.printed_value;
        out += " computed=";
        out += f.computed_value;
        out += '\n';
    }
    return out;
}

}  // namespace ll1
