#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ll1/grammar.hpp"
#include "ll1/lexicon.hpp"
#include "ll1/sets.hpp"
#include "ll1/table.hpp"

namespace ll1 {

/// Fixture problem: missing file or malformed case-study content.
class CaseStudyError : public std::runtime_error {
public:
    explicit CaseStudyError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class EntryKind : std::uint8_t { raw_sentence, tag_sequence };

std::string_view to_string(EntryKind kind);

struct CorpusEntry {
    EntryKind kind = EntryKind::raw_sentence;
    std::string payload;  // sentence text, or space-separated tag names
    bool expect_accept = false;
    std::string provenance;  // comment block directly above the entry
};

/// Parses the corpus format, one entry per line:
///   S<TAB>accept|reject<TAB>raw sentence
///   T<TAB>accept|reject<TAB>tag tag tag
/// A `#` comment block immediately above an entry (no blank line between)
/// becomes its provenance; other comments and blank lines are skipped.
std::vector<CorpusEntry> parse_corpus(std::string_view text);

/// One transcribed `FIRST(A) = {...}` or `FOLLOW(A) = {...}` line. Members
/// keep file order; `eps` and `$` are plain member strings here.
struct PrintedSet {
    std::string symbol;
    std::vector<std::string> members;
};

/// Parses a printed-sets transcription file. `kind` is "FIRST" or "FOLLOW"
/// and every line must use it; duplicate symbols are rejected.
std::vector<PrintedSet> parse_printed_sets(std::string_view text, std::string_view kind);

/// Every artifact of the published case study, loaded together.
struct CaseStudy {
    Grammar grammar;       // the published left-factored grammar
    FirstSets first;       // computed from `grammar`
    FollowSets follow;     // computed from `grammar`
    BuildResult computed;  // table built from `grammar`, plus its conflicts
    LoadedTable transcribed;  // the published table text, loaded verbatim
    Lexicon lexicon;          // XML and TSV dictionaries, merged
    std::vector<CorpusEntry> corpus;
    std::vector<PrintedSet> printed_first;   // published FIRST sets
    std::vector<PrintedSet> printed_follow;  // published FOLLOW sets
};

/// Directory the case-study fixtures ship in.
std::string default_data_dir();

/// Loads all fixtures from `dir`: grammar.g, printed_table.tbl,
/// printed_first_sets.txt, printed_follow_sets.txt, lexicon.xml,
/// lexicon.tsv, corpus.tsv. Throws CaseStudyError on unreadable files;
/// format errors from the individual loaders propagate unchanged.
CaseStudy load_case_study(const std::string& dir = default_data_dir());

enum class FindingSubject : std::uint8_t { first_set, follow_set, table_cell, production };

std::string_view to_string(FindingSubject subject);

/// One mechanical disagreement between a computed artifact and the published
/// transcription of the same artifact.
struct ConsistencyFinding {
    FindingSubject subject;
    std::string location;  // symbol name, or "(row, column)" for table cells
    std::string printed_value;
    std::string computed_value;
};

/// Every disagreement, ordered by subject (first-set, follow-set,
/// table-cell, production) and within a subject by grammar/table order.
/// Deterministic for fixed fixtures.
std::vector<ConsistencyFinding> consistency_report(const CaseStudy& cs);

/// One line per finding:
///   follow-set S: printed={adjective, ...} computed={$}
///   table-cell (VP2, noun): printed=noun VP3 computed=(empty)
///   production VP5: printed=VP5->pronoun computed=absent from the grammar
std::string format_findings(std::span<const ConsistencyFinding> findings);

}  // namespace ll1
