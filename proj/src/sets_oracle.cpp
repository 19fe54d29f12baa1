// Derivation-enumeration oracles for FIRST/FOLLOW.
//
// Forms are byte strings (one symbol id per byte, 0xff = end marker) kept in
// a deque so views into them stay valid; a hash set of views dedupes. Both
// oracles run breadth first so every form is seen at its minimal expansion
// depth. Two reductions keep the state space honest but small:
//
//  * FIRST forms are cut after their first terminal. Leftmost expansion only
//    ever rewrites the head, so symbols behind the first terminal can never
//    influence the leading terminal, and a form containing a terminal can
//    never erase.
//  * FOLLOW forms drop the leading terminal run and collapse every other
//    terminal run to its first symbol. Terminals are inert: only the one
//    directly right of a nonterminal can ever be recorded, and it shields
//    the rest of its run, which no expansion can expose.
//
// Neither reduction consults the computed sets, so the oracles stay an
// independent check of the fixpoint implementations.

#include "ll1/sets_oracle.hpp"

#include <deque>
#include <string>
#include <string_view>
#include <unordered_set>

namespace ll1 {

namespace {

constexpr unsigned char kEnd = 0xff;

struct FormSpace {
    std::deque<std::string> forms;
    std::unordered_set<std::string_view> seen;
    std::size_t budget;

    explicit FormSpace(std::size_t budget) : budget(budget) {}

    // Adds a form if new; returns whether it was added.
    bool add(std::string f) {
        if (seen.contains(f)) return false;
        if (forms.size() >= budget)
            throw BudgetError("enumeration budget exceeded (" + std::to_string(budget) +
                              " sentential forms)");
        forms.push_back(std::move(f));
        seen.insert(forms.back());
        return true;
    }
};

void check_oracle_guards(const Grammar& g) {
    if (g.nonterminals().size() > 20)
        throw std::invalid_argument("derivation oracle limited to 20 nonterminals");
    if (g.symbol_count() >= 0xff)
        throw std::invalid_argument("derivation oracle limited to 254 symbols");
}

bool is_terminal_byte(const Grammar& g, unsigned char b) {
    return b == kEnd || g.is_terminal(SymbolId{b});
}

std::string rhs_bytes(const Production& p) {
    std::string out;
    out.reserve(p.rhs.size());
    for (SymbolId s : p.rhs) out.push_back(static_cast<char>(s.value));
    return out;
}

}  // namespace

FirstSets brute_force_first_oracle(const Grammar& g, std::size_t depth, std::size_t max_forms) {
    check_oracle_guards(g);

    FirstSets out;
    out.per_symbol.resize(g.symbol_count());
    out.nullable.flags.assign(g.symbol_count(), false);

    std::size_t used = 0;
    for (SymbolId origin : g.nonterminals()) {
        FormSpace space(max_forms - used);

        auto canon = [&](std::string f) {
            for (std::size_t i = 0; i < f.size(); ++i)
                if (is_terminal_byte(g, static_cast<unsigned char>(f[i]))) {
                    f.resize(i + 1);
                    break;
                }
            return f;
        };
        auto record = [&](std::string_view f) {
            if (f.empty())
                out.nullable.flags[origin.value] = true;
            else if (auto b = static_cast<unsigned char>(f[0]); is_terminal_byte(g, b))
                out.per_symbol[origin.value].insert(SymbolId{b});
        };

        space.add(std::string(1, static_cast<char>(origin.value)));
        record(space.forms.front());

        std::size_t level_begin = 0, level_end = 1;
        for (std::size_t d = 0; d < depth && level_begin < level_end; ++d) {
            for (std::size_t i = level_begin; i < level_end; ++i) {
                // Copy: space.forms may grow while we expand.
                const std::string form = space.forms[i];
                if (form.empty()) continue;
                auto head = static_cast<unsigned char>(form[0]);
                if (is_terminal_byte(g, head)) continue;
                for (std::size_t pi : g.productions_of(SymbolId{head})) {
                    std::string child = canon(rhs_bytes(g.production(pi)) + form.substr(1));
                    if (space.add(std::move(child))) record(space.forms.back());
                }
            }
            level_begin = level_end;
            level_end = space.forms.size();
        }
        used += space.forms.size();
    }
    return out;
}

FollowSets brute_force_follow_oracle(const Grammar& g, std::size_t depth, std::size_t max_forms) {
    check_oracle_guards(g);

    FollowSets out;
    out.per_symbol.resize(g.symbol_count());
    out.end_marker.assign(g.symbol_count(), false);

    // Drop the leading terminal run, collapse inner terminal runs to their
    // first symbol, and cut after the symbol following the last nonterminal.
    // Returns "" for forms with no nonterminal left (nothing more to learn).
    auto canon = [&](std::string_view f) {
        std::string r;
        std::size_t last_nt = std::string::npos;
        bool prev_terminal = false;
        for (unsigned char b : f) {
            if (is_terminal_byte(g, b)) {
                if (prev_terminal) continue;
                prev_terminal = true;
            } else {
                prev_terminal = false;
                last_nt = r.size();
            }
            r.push_back(static_cast<char>(b));
        }
        if (last_nt == std::string::npos) return std::string();
        // Drop the leading terminal; after collapsing, a run is one symbol.
        if (is_terminal_byte(g, static_cast<unsigned char>(r[0]))) {
            r.erase(0, 1);
            --last_nt;
        }
        r.resize(std::min(r.size(), last_nt + 2));
        return r;
    };

    auto record = [&](std::string_view f) {
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            auto a = static_cast<unsigned char>(f[i]);
            auto b = static_cast<unsigned char>(f[i + 1]);
            if (is_terminal_byte(g, a) || !is_terminal_byte(g, b)) continue;
            if (b == kEnd)
                out.end_marker[a] = true;
            else
                out.per_symbol[a].insert(SymbolId{b});
        }
    };

    FormSpace space(max_forms);
    std::string seed{static_cast<char>(g.start().value), static_cast<char>(kEnd)};
    space.add(seed);
    record(seed);

    std::size_t level_begin = 0, level_end = 1;
    for (std::size_t d = 0; d < depth && level_begin < level_end; ++d) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const std::string form = space.forms[i];
            for (std::size_t pos = 0; pos < form.size(); ++pos) {
                auto b = static_cast<unsigned char>(form[pos]);
                if (is_terminal_byte(g, b)) continue;
                for (std::size_t pi : g.productions_of(SymbolId{b})) {
                    std::string raw = form.substr(0, pos) + rhs_bytes(g.production(pi)) +
                                      form.substr(pos + 1);
                    std::string child = canon(raw);
                    if (child.empty()) continue;
                    if (space.add(std::move(child))) record(space.forms.back());
                }
            }
        }
        level_begin = level_end;
        level_end = space.forms.size();
    }
    return out;
}

}  // namespace ll1
