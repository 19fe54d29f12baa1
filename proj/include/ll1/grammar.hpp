#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ll1 {

/// Dense index into a Grammar's symbol table.
struct SymbolId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

enum class SymbolKind { terminal, nonterminal };

struct SymbolEntry {
    std::string name;
    SymbolKind kind = SymbolKind::terminal;
    friend bool operator==(const SymbolEntry&, const SymbolEntry&) = default;
};

/// One production A -> Y1 ... Yn. An empty rhs denotes epsilon.
struct Production {
    std::size_t index = 0;
    SymbolId lhs;
    std::vector<SymbolId> rhs;
    friend bool operator==(const Production&, const Production&) = default;
};

/// Raised for unreadable or invalid grammar descriptions. line/column are
/// 1-based and zero when the error is not tied to a source position.
struct GrammarError : std::runtime_error {
    explicit GrammarError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(msg), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

/// lhs plus its alternatives, used to assemble a Grammar programmatically.
/// An alternative is a list of symbol names; {} or {"@eps"} denotes epsilon.
struct RuleSpec {
    std::string lhs;
    std::vector<std::vector<std::string>> alternatives;
};

// A context-free grammar with an interned symbol table. Symbols are interned
// in order of first appearance (lhs before its alternatives, rule by rule);
// a symbol is a nonterminal exactly when it occurs on the left of some rule.
// The start symbol is the first rule's lhs.
class Grammar {
public:
    static Grammar from_rules(std::span<const RuleSpec> rules);

    std::size_t symbol_count() const { return symbols_.size(); }
    const SymbolEntry& symbol(SymbolId id) const { return symbols_.at(id.value); }
    const std::string& name(SymbolId id) const { return symbols_.at(id.value).name; }
    bool is_terminal(SymbolId id) const { return symbol(id).kind == SymbolKind::terminal; }
    bool is_nonterminal(SymbolId id) const { return symbol(id).kind == SymbolKind::nonterminal; }
    std::optional<SymbolId> find(std::string_view name) const;

    SymbolId start() const { return start_; }
    std::span<const Production> productions() const { return productions_; }
    const Production& production(std::size_t index) const { return productions_.at(index); }
    std::span<const std::size_t> productions_of(SymbolId nt) const;

    /// Terminals / nonterminals in first-appearance (id) order.
    std::vector<SymbolId> terminals() const;
    std::vector<SymbolId> nonterminals() const;

    /// "x y z" or "@eps"; used by table cells, traces and diffs.
    std::string render_rhs(std::span<const SymbolId> rhs) const;
    /// "A->x y z" or "A->@eps".
    std::string render(const Production& p) const;

    friend bool operator==(const Grammar& a, const Grammar& b) {
        return a.symbols_ == b.symbols_ && a.productions_ == b.productions_ &&
               a.start_ == b.start_;
    }

private:
    std::vector<SymbolEntry> symbols_;
    std::vector<Production> productions_;
    std::vector<std::vector<std::size_t>> by_lhs_;  // symbol id -> production indices
    SymbolId start_{};
};

/// Parses the plain-text grammar format:
///   # comment to end of line
///   LHS -> alt1 sym sym | alt2 | @eps ;
/// Symbols are whitespace-separated tokens; `->`, `|`, `;`, `#` are reserved.
/// An empty alternative and the literal token `@eps` both denote epsilon.
/// The first lhs is the start symbol. Throws GrammarError with line/column.
Grammar parse_grammar_text(std::string_view text);

/// Canonical text form; parse_grammar_text(serialize_grammar(g)) == g.
/// Consecutive productions with the same lhs are joined with `|`.
std::string serialize_grammar(const Grammar& g);

}  // namespace ll1
