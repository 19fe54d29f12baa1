#include "ll1/driver.hpp"

#include <algorithm>
#include <functional>

namespace ll1 {

namespace {

constexpr std::string_view kEnd = "$";
constexpr std::string_view kEps = "@eps";

std::vector<std::string> expected_of_row(const ParseTable& table, const Grammar& g,
                                         std::size_t row) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < table.columns().size(); ++c)
        if (!table.cell(row, c).empty()) names.push_back(g.name(table.columns()[c]));
    std::ranges::sort(names);
    if (!table.cell(row, table.end_column()).empty()) names.emplace_back(kEnd);
    return names;
}

struct RunOutput {
    ParseOutcome outcome;
    std::vector<MoveRecord> moves;
    std::optional<ParseTree> tree;
};

// One forward pass of the machine; `choose` picks the cell entry at every
// nonterminal expansion. Used directly in deterministic mode and to replay
// the choice sequence a backtracking search settled on.
RunOutput run_forward(const ParseTable& table, const Grammar& g,
                      const std::vector<SymbolId>& tag_ids,
                      const std::vector<std::string>* surfaces, std::size_t budget,
                      const std::function<std::size_t(const std::vector<CellEntry>&)>& choose) {
    RunOutput out;
    ParseTree root{g.name(g.start()), std::nullopt, {}};
    // Top of stack at the back; the $ at the bottom is implicit. Each frame
    // carries the tree node the symbol will expand or label.
    std::vector<std::pair<SymbolId, ParseTree*>> stack;
    stack.push_back({g.start(), &root});
    std::size_t ip = 0;
    std::size_t steps = 0;

    auto record = [&](std::string action) {
        MoveRecord rec;
        rec.stack.emplace_back(kEnd);
        for (const auto& [sym, node] : stack) rec.stack.push_back(g.name(sym));
        for (std::size_t i = ip; i < tag_ids.size(); ++i) rec.input.push_back(g.name(tag_ids[i]));
        rec.input.emplace_back(kEnd);
        rec.action = std::move(action);
        out.moves.push_back(std::move(rec));
    };

    auto reject = [&](RejectReason reason, std::vector<std::string> expected) {
        RejectInfo info;
        info.position = ip;
        info.stack_top = stack.empty() ? std::string(kEnd) : g.name(stack.back().first);
        info.expected = std::move(expected);
        info.reason = reason;
        out.outcome.reject = std::move(info);
        record("reject: " + std::string(to_string(reason)));
    };

    record("");
    for (;;) {
        bool at_end = ip == tag_ids.size();
        if (stack.empty()) {
            if (!at_end) {
                reject(RejectReason::input_remaining_stack_empty, {std::string(kEnd)});
                break;
            }
            out.outcome.accepted = true;
            out.tree = std::move(root);
            record("accept");
            break;
        }
        auto [top, node] = stack.back();
        if (g.is_terminal(top)) {
            if (at_end) {
                reject(RejectReason::input_exhausted_stack_nonempty, {g.name(top)});
                break;
            }
            if (tag_ids[ip] != top) {
                reject(RejectReason::terminal_mismatch, {g.name(top)});
                break;
            }
            if (surfaces) node->surface = (*surfaces)[ip];
            stack.pop_back();
            ++ip;
            record("matched " + g.name(top));
            continue;
        }

        auto row = table.row_index(top);
        auto col = at_end ? std::optional<std::size_t>(table.end_column())
                          : table.column_index(tag_ids[ip]);
        static const std::vector<CellEntry> kEmptyCell;
        const auto& cell = row && col ? table.cell(*row, *col) : kEmptyCell;
        if (cell.empty()) {
            reject(RejectReason::empty_cell,
                   row ? expected_of_row(table, g, *row) : std::vector<std::string>{});
            break;
        }
        if (steps == budget) {
            reject(RejectReason::budget_exhausted, {});
            break;
        }
        ++steps;
        const Production& p = g.production(cell[choose(cell)].production);
        stack.pop_back();
        if (p.rhs.empty()) {
            node->children.push_back({std::string(kEps), std::nullopt, {}});
        } else {
            node->children.reserve(p.rhs.size());
            for (SymbolId s : p.rhs) node->children.push_back({g.name(s), std::nullopt, {}});
            for (std::size_t i = p.rhs.size(); i-- > 0;)
                stack.push_back({p.rhs[i], &node->children[i]});
        }
        record(g.render(p));
    }
    return out;
}

struct SearchResult {
    bool accepted = false;
    std::vector<std::size_t> script;  // chosen entry per expansion, in order
    RejectInfo reject;                // best failure when not accepted
    // Set when the search died on the step budget; the machine configuration
    // at death is preserved for the trace.
    std::optional<MoveRecord> budget_row;
};

// Depth-first search over cell entries with journal-based undo. Returns the
// accepting choice script, or the script of the explored path whose failure
// got furthest into the input (first such path on ties).
SearchResult search_backtracking(const ParseTable& table, const Grammar& g,
                                 const std::vector<SymbolId>& tag_ids, std::size_t budget) {
    std::vector<SymbolId> stack{g.start()};  // top at the back, $ implicit
    std::size_t ip = 0;
    std::size_t steps = 0;

    struct Op {
        SymbolId popped;
        std::uint32_t pushed;  // rhs length for expansions
        bool match;
    };
    struct Decision {
        std::size_t journal_mark;
        std::size_t script_mark;
        std::size_t row, col;
        std::size_t next;  // next cell entry to try
    };
    std::vector<Op> journal;
    std::vector<Decision> decisions;
    std::vector<std::size_t> script;

    std::optional<RejectInfo> best;
    std::vector<std::size_t> best_script;

    auto top_name = [&] { return stack.empty() ? std::string(kEnd) : g.name(stack.back()); };

    auto config_row = [&](std::string action) {
        MoveRecord rec;
        rec.stack.emplace_back(kEnd);
        for (SymbolId sym : stack) rec.stack.push_back(g.name(sym));
        for (std::size_t i = ip; i < tag_ids.size(); ++i) rec.input.push_back(g.name(tag_ids[i]));
        rec.input.emplace_back(kEnd);
        rec.action = std::move(action);
        return rec;
    };

    auto undo_to = [&](std::size_t mark) {
        while (journal.size() > mark) {
            Op op = journal.back();
            journal.pop_back();
            if (op.match) {
                stack.push_back(op.popped);
                --ip;
            } else {
                stack.resize(stack.size() - op.pushed);
                stack.push_back(op.popped);
            }
        }
    };

    auto expand = [&](std::size_t row, std::size_t col, std::size_t choice) {
        const Production& p = g.production(table.cell(row, col)[choice].production);
        journal.push_back({stack.back(), static_cast<std::uint32_t>(p.rhs.size()), false});
        stack.pop_back();
        for (std::size_t i = p.rhs.size(); i-- > 0;) stack.push_back(p.rhs[i]);
        script.push_back(choice);
        ++steps;
    };

    for (;;) {
        // One machine step; a failure falls through to the backtrack below.
        std::optional<RejectReason> failure;
        std::vector<std::string> expected;
        bool at_end = ip == tag_ids.size();

        if (stack.empty()) {
            if (at_end) return {true, std::move(script), {}, {}};
            failure = RejectReason::input_remaining_stack_empty;
            expected = {std::string(kEnd)};
        } else if (SymbolId top = stack.back(); g.is_terminal(top)) {
            if (at_end) {
                failure = RejectReason::input_exhausted_stack_nonempty;
                expected = {g.name(top)};
            } else if (tag_ids[ip] != top) {
                failure = RejectReason::terminal_mismatch;
                expected = {g.name(top)};
            } else {
                journal.push_back({top, 0, true});
                stack.pop_back();
                ++ip;
                continue;
            }
        } else {
            auto row = table.row_index(top);
            auto col = at_end ? std::optional<std::size_t>(table.end_column())
                              : table.column_index(tag_ids[ip]);
            bool empty = !row || !col || table.cell(*row, *col).empty();
            if (!empty) {
                if (steps == budget) {
                    SearchResult out;
                    out.reject = {ip, top_name(), {}, RejectReason::budget_exhausted};
                    out.budget_row = config_row("reject: " +
                                                std::string(to_string(RejectReason::budget_exhausted)));
                    return out;
                }
                const auto& cell = table.cell(*row, *col);
                if (cell.size() > 1)
                    decisions.push_back({journal.size(), script.size(), *row, *col, 1});
                expand(*row, *col, 0);
                continue;
            }
            failure = RejectReason::empty_cell;
            if (row) expected = expected_of_row(table, g, *row);
        }

        RejectInfo info{ip, top_name(), std::move(expected), *failure};
        if (!best || info.position > best->position) {
            best = info;
            best_script = script;
        }

        bool resumed = false;
        while (!decisions.empty()) {
            Decision& d = decisions.back();
            const auto& cell = table.cell(d.row, d.col);
            if (d.next >= cell.size()) {
                decisions.pop_back();
                continue;
            }
            std::size_t choice = d.next++;
            undo_to(d.journal_mark);
            script.resize(d.script_mark);
            if (steps == budget) {
                SearchResult out;
                out.reject = {ip, top_name(), {}, RejectReason::budget_exhausted};
                out.budget_row = config_row("reject: " +
                                            std::string(to_string(RejectReason::budget_exhausted)));
                return out;
            }
            expand(d.row, d.col, choice);
            resumed = true;
            break;
        }
        if (!resumed) {
            SearchResult out;
            out.reject = std::move(*best);
            out.script = std::move(best_script);
            return out;
        }
    }
}

}  // namespace

std::string_view to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::empty_cell: return "empty-cell";
        case RejectReason::terminal_mismatch: return "terminal-mismatch";
        case RejectReason::input_exhausted_stack_nonempty: return "input-exhausted-stack-nonempty";
        case RejectReason::input_remaining_stack_empty: return "input-remaining-stack-empty";
        case RejectReason::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

ParseResult parse_predictive(const ParseTable& table, const Grammar& g,
                             const std::vector<std::string>& tags, const DriverPolicy& policy,
                             const std::vector<std::string>* surfaces) {
    if (surfaces && surfaces->size() != tags.size())
        throw std::invalid_argument("surfaces must parallel tags");
    std::vector<SymbolId> ids;
    ids.reserve(tags.size());
    for (std::size_t i = 0; i < tags.size(); ++i) {
        auto id = g.find(tags[i]);
        if (!id || !g.is_terminal(*id)) throw UnknownTerminalError(tags[i], i);
        ids.push_back(*id);
    }

    if (policy.mode == DriverMode::deterministic) {
        RunOutput out = run_forward(table, g, ids, surfaces, policy.step_budget,
                                    [](const std::vector<CellEntry>&) { return std::size_t{0}; });
        return {out.outcome, std::move(out.moves), std::move(out.tree)};
    }

    SearchResult found = search_backtracking(table, g, ids, policy.step_budget);
    if (found.budget_row) {
        // The search died mid-exploration; a linear trace of the whole search
        // would be misleading, so report just the start and the verdict.
        ParseResult res;
        res.outcome = {false, found.reject};
        MoveRecord initial;
        initial.stack = {std::string(kEnd), g.name(g.start())};
        for (SymbolId id : ids) initial.input.push_back(g.name(id));
        initial.input.emplace_back(kEnd);
        res.moves.push_back(std::move(initial));
        res.moves.push_back(std::move(*found.budget_row));
        return res;
    }

    std::size_t next = 0;
    RunOutput out = run_forward(table, g, ids, surfaces, policy.step_budget,
                                [&](const std::vector<CellEntry>&) {
                                    return next < found.script.size() ? found.script[next++]
                                                                      : std::size_t{0};
                                });
    return {out.outcome, std::move(out.moves), std::move(out.tree)};
}

std::string format_trace(const std::vector<MoveRecord>& moves) {
    std::string out = "Stack\tInput\tAction\n";
    for (const MoveRecord& m : moves) {
        for (std::size_t i = 0; i < m.stack.size(); ++i) {
            if (i) out += ' ';
            out += m.stack[i];
        }
        out += '\t';
        for (std::size_t i = 0; i < m.input.size(); ++i) {
            if (i) out += ' ';
            out += m.input[i];
        }
        out += '\t';
        if (m.action == "accept")
            out += "Sentence is accepted";
        else if (m.action.starts_with("reject: "))
            out += "Sentence is rejected (" + m.action.substr(8) + ")";
        else
            out += m.action;
        out += '\n';
    }
    return out;
}

std::string tree_to_bracketed(const ParseTree& t) {
    if (t.symbol == kEps && t.children.empty()) return std::string(kEps);
    std::string out = "(";
    out += t.symbol;
    if (t.children.empty()) {
        if (t.surface) {
            out += ' ';
            out += *t.surface;
        }
    } else {
        for (const ParseTree& child : t.children) {
            out += ' ';
            out += tree_to_bracketed(child);
        }
    }
    out += ')';
    return out;
}

}  // namespace ll1
