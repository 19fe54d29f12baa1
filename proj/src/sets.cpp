#include "ll1/sets.hpp"

#include <algorithm>

namespace ll1 {

std::vector<SymbolId> NullableSet::members(const Grammar& g) const {
    std::vector<SymbolId> out;
    for (SymbolId nt : g.nonterminals())
        if (contains(nt)) out.push_back(nt);
    return out;
}

// All three computations below are chaotic iterations to the least fixpoint:
// they sweep the productions in declaration order and repeat until a full
// pass adds nothing. Every step only ever adds facts, and the lattice is
// finite, so they terminate.

NullableSet compute_nullable(const Grammar& g) {
    NullableSet ns;
    ns.flags.assign(g.symbol_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions()) {
            if (ns.flags[p.lhs.value]) continue;
            bool all = true;
            for (SymbolId s : p.rhs)
                if (!ns.flags[s.value]) {
                    all = false;
                    break;
                }
            if (all) {
                ns.flags[p.lhs.value] = true;
                changed = true;
            }
        }
    }
    return ns;
}

FirstSets compute_first(const Grammar& g) {
    FirstSets fs;
    fs.per_symbol.resize(g.symbol_count());
    fs.nullable = compute_nullable(g);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions()) {
            auto& target = fs.per_symbol[p.lhs.value];
            for (SymbolId s : p.rhs) {
                if (g.is_terminal(s)) {
                    changed |= target.insert(s).second;
                    break;
                }
                for (SymbolId t : fs.per_symbol[s.value]) changed |= target.insert(t).second;
                if (!fs.nullable.contains(s)) break;
            }
        }
    }
    return fs;
}

SequenceFirst first_of_sequence(const Grammar& g, std::span<const SymbolId> seq,
                                const FirstSets& fs) {
    SequenceFirst out;
    out.nullable = true;
    for (SymbolId s : seq) {
        if (g.is_terminal(s)) {
            out.terminals.insert(s);
            out.nullable = false;
            break;
        }
        const auto& first = fs.of(s);
        out.terminals.insert(first.begin(), first.end());
        if (!fs.nullable.contains(s)) {
            out.nullable = false;
            break;
        }
    }
    return out;
}

FollowSets compute_follow(const Grammar& g, const FirstSets& fs) {
    FollowSets fl;
    fl.per_symbol.resize(g.symbol_count());
    fl.end_marker.assign(g.symbol_count(), false);
    fl.end_marker[g.start().value] = true;

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions()) {
            for (std::size_t i = 0; i < p.rhs.size(); ++i) {
                SymbolId a = p.rhs[i];
                if (!g.is_nonterminal(a)) continue;
                std::span<const SymbolId> rest{p.rhs.data() + i + 1, p.rhs.size() - i - 1};
                SequenceFirst rf = first_of_sequence(g, rest, fs);
                auto& target = fl.per_symbol[a.value];
                for (SymbolId t : rf.terminals) changed |= target.insert(t).second;
                if (rf.nullable) {
                    for (SymbolId t : fl.per_symbol[p.lhs.value])
                        changed |= target.insert(t).second;
                    if (fl.end_marker[p.lhs.value] && !fl.end_marker[a.value]) {
                        fl.end_marker[a.value] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    return fl;
}

namespace {

std::string format_set_line(const Grammar& g, const char* label, SymbolId nt,
                            const std::set<SymbolId>& members, bool eps, bool end) {
    std::vector<std::string> names;
    names.reserve(members.size());
    for (SymbolId t : members) names.push_back(g.name(t));
    std::sort(names.begin(), names.end());
    if (eps) names.emplace_back("eps");
    if (end) names.emplace_back("$");

    std::string line = std::string(label) + "(" + g.name(nt) + ") = {";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) line += ", ";
        line += names[i];
    }
    line += "}\n";
    return line;
}

}  // namespace

std::string format_first_sets(const Grammar& g, const FirstSets& fs) {
    std::string out;
    for (SymbolId nt : g.nonterminals())
        out += format_set_line(g, "FIRST", nt, fs.of(nt), fs.nullable.contains(nt), false);
    return out;
}

std::string format_follow_sets(const Grammar& g, const FollowSets& fl) {
    std::string out;
    for (SymbolId nt : g.nonterminals())
        out += format_set_line(g, "FOLLOW", nt, fl.of(nt), false, fl.has_end(nt));
    return out;
}

}  // namespace ll1
