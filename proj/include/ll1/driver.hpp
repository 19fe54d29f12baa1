#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ll1/grammar.hpp"
#include "ll1/table.hpp"

namespace ll1 {

enum class DriverMode : std::uint8_t { deterministic, backtracking };

/// deterministic: always take the first production of a multi-entry cell.
/// backtracking: depth-first over cell entries in order, bounded by
/// step_budget production expansions across the whole search.
struct DriverPolicy {
    DriverMode mode = DriverMode::deterministic;
    std::size_t step_budget = 100000;
};

enum class RejectReason : std::uint8_t {
    empty_cell,
    terminal_mismatch,
    input_exhausted_stack_nonempty,
    input_remaining_stack_empty,
    budget_exhausted,
};

std::string_view to_string(RejectReason reason);

struct RejectInfo {
    std::size_t position = 0;  // token index of the lookahead ($ = tags.size())
    std::string stack_top;     // "$" when only the end marker remained
    /// What would have let the parse continue: the nonempty columns of the
    /// stuck nonterminal's row, or the terminal the stack demanded. Sorted
    /// lexicographically with "$" last. Empty for budget exhaustion.
    std::vector<std::string> expected;
    RejectReason reason = RejectReason::empty_cell;
};

struct ParseOutcome {
    bool accepted = false;
    std::optional<RejectInfo> reject;  // set exactly when not accepted
};

/// One row of the move trace. Each record shows the configuration after its
/// action; the first record is the initial configuration with empty action.
/// Actions: "" (initial), "A->x y" / "A->@eps", "matched t", "accept",
/// "reject: <reason>".
struct MoveRecord {
    std::vector<std::string> stack;  // bottom ($) first, top last
    std::vector<std::string> input;  // remaining tags plus trailing "$"
    std::string action;
};

/// Parse tree; interior nodes are nonterminals, leaves are terminals. An
/// epsilon expansion is a single child labeled "@eps". Terminal leaves carry
/// the source word when the caller supplied surfaces.
struct ParseTree {
    std::string symbol;
    std::optional<std::string> surface;
    std::vector<ParseTree> children;
};

struct ParseResult {
    ParseOutcome outcome;
    std::vector<MoveRecord> moves;
    std::optional<ParseTree> tree;  // accepting runs only
};

/// A tag that is not a terminal of the grammar; distinct from rejection.
struct UnknownTerminalError : std::runtime_error {
    UnknownTerminalError(std::string tag_, std::size_t position_)
        : std::runtime_error("unknown terminal '" + tag_ + "' at token " +
                             std::to_string(position_)),
          tag(std::move(tag_)),
          position(position_) {}
    std::string tag;
    std::size_t position;
};

/// Runs the table-driven parsing machine on a tag sequence. In backtracking
/// mode the returned moves replay the accepting choice sequence, or the
/// explored path that got furthest into the input. surfaces, when given,
/// must parallel tags and are attached to tree leaves.
ParseResult parse_predictive(const ParseTable& table, const Grammar& g,
                             const std::vector<std::string>& tags, const DriverPolicy& policy = {},
                             const std::vector<std::string>* surfaces = nullptr);

/// Three tab-separated columns with header "Stack\tInput\tAction"; the
/// accept/reject actions render as "Sentence is accepted" / "Sentence is
/// rejected (<reason>)".
std::string format_trace(const std::vector<MoveRecord>& moves);

/// Fully parenthesized form, e.g. (S (NP (modifier একটি) (noun ছেলে)) ...);
/// an epsilon child renders as a bare @eps.
std::string tree_to_bracketed(const ParseTree& t);

}  // namespace ll1
