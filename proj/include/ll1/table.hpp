#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ll1/grammar.hpp"
#include "ll1/sets.hpp"

namespace ll1 {

/// One production in a table cell plus which construction rule placed it
/// there (rule 2 puts nullable right-hand sides under FOLLOW columns).
/// Loaded tables carry no provenance; see ParseTable::has_provenance.
struct CellEntry {
    std::size_t production = 0;
    bool via_follow = false;
    friend bool operator==(const CellEntry&, const CellEntry&) = default;
};

/// Predictive parse table M[A, a]. Rows are nonterminals and columns
/// terminals, both in grammar appearance order when built; the end marker $
/// is the implicit final column (index columns().size()). An empty cell is
/// an error entry. Cell entries keep grammar declaration order.
class ParseTable {
public:
    ParseTable(std::vector<SymbolId> rows, std::vector<SymbolId> columns, bool has_provenance);

    const std::vector<SymbolId>& rows() const { return rows_; }
    const std::vector<SymbolId>& columns() const { return columns_; }
    std::size_t end_column() const { return columns_.size(); }

    std::optional<std::size_t> row_index(SymbolId nonterminal) const;
    /// Terminal columns only; the end marker has no SymbolId.
    std::optional<std::size_t> column_index(SymbolId terminal) const;

    const std::vector<CellEntry>& cell(std::size_t row, std::size_t column) const;
    /// Appends unless the production is already in the cell (first entry wins).
    void add(std::size_t row, std::size_t column, CellEntry entry);

    /// False for tables read back from text, where the construction rule
    /// behind each entry is unknown.
    bool has_provenance() const { return has_provenance_; }

    /// Structural equality: same row/column symbols and the same production
    /// list in every cell. Provenance flags are ignored so that a serialized
    /// and reloaded table compares equal to its source.
    friend bool operator==(const ParseTable& a, const ParseTable& b);

private:
    std::vector<SymbolId> rows_;
    std::vector<SymbolId> columns_;
    bool has_provenance_;
    std::vector<std::vector<std::vector<CellEntry>>> cells_;  // [row][column]
};

enum class ConflictKind : std::uint8_t { first_first, first_follow, unknown };

std::string_view to_string(ConflictKind kind);

/// A cell holding two or more productions. column is empty for the $ column.
struct ConflictEntry {
    SymbolId row;
    std::optional<SymbolId> column;
    std::vector<std::size_t> productions;
    ConflictKind kind = ConflictKind::unknown;
};

struct ConflictReport {
    std::vector<ConflictEntry> entries;
    bool empty() const { return entries.empty(); }
};

struct BuildResult {
    ParseTable table;
    ConflictReport conflicts;
};

/// Fills the table by the two standard rules: every production goes under
/// each terminal of FIRST(rhs); a production with nullable rhs additionally
/// goes under every member of FOLLOW(lhs), including the $ column. Conflicts
/// are reported, never dropped.
BuildResult build_table(const Grammar& g, const FirstSets& fs, const FollowSets& fl);

/// Re-derives the report from cell cardinalities. Kind comes from the
/// provenance recorded at build time, or `unknown` for loaded tables.
ConflictReport conflicts(const ParseTable& t);

/// One line per conflicted cell:
///   M[NP1, pronoun] first-follow: NP1->pronoun NP2 / NP1->@eps
std::string format_conflicts(const ConflictReport& report, const Grammar& g);

/// Tabular text form (see load_table for the shape); loadable back to a
/// structurally equal table. The first line names the start symbol.
std::string serialize_table(const ParseTable& t, const Grammar& g);

struct LoadedTable {
    /// The input grammar plus any table-only productions appended at the end
    /// (original production indices are unchanged).
    Grammar grammar;
    ParseTable table;
    /// Indices into `grammar` of productions that appear in some cell but
    /// not in the input grammar, in first-encounter order.
    std::vector<std::size_t> synthetic_productions;
};

/// Parses the table text format:
///   TABLE <start-symbol>
///   <TAB>col<TAB>col...<TAB>$
///   row<TAB>cell<TAB>cell...
/// `#` comment lines and blank lines are skipped. A cell is empty, one rhs
/// (space-separated symbol names, `@eps` for epsilon), or several rhs
/// separated by ` / `. Missing trailing cells are empty. Every symbol must
/// exist in g; cells whose rhs is not a production of g introduce synthetic
/// productions. Throws GrammarError on malformed input or unknown symbols.
LoadedTable load_table(std::string_view text, const Grammar& g);

/// One differing cell, aligned by symbol name. Each side lists the cell's
/// rhs texts (`@eps` for epsilon); an empty list is an empty cell.
struct TableDiffEntry {
    std::string row;
    std::string column;  // "$" for the end-marker column
    std::vector<std::string> left;
    std::vector<std::string> right;
};

struct TableDiff {
    std::vector<TableDiffEntry> entries;
    bool empty() const { return entries.empty(); }
};

/// Cell-by-cell comparison of two tables over the same row/column names
/// (possibly from different Grammar instances). Entries are ordered
/// row-major by a's row and column order. Throws std::invalid_argument when
/// the row or column name sets differ.
TableDiff diff_tables(const ParseTable& a, const Grammar& ga, const ParseTable& b,
                      const Grammar& gb);

}  // namespace ll1
