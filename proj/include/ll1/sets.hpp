#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "ll1/grammar.hpp"

namespace ll1 {

/// Which nonterminals derive the empty string. Epsilon is tracked as this
/// flag everywhere; it is never an element of a FIRST/FOLLOW set.
struct NullableSet {
    std::vector<bool> flags;  // indexed by SymbolId::value; false for terminals

    bool contains(SymbolId id) const {
        return id.value < flags.size() && flags[id.value];
    }
    std::vector<SymbolId> members(const Grammar& g) const;
};

struct FirstSets {
    std::vector<std::set<SymbolId>> per_symbol;  // populated for nonterminals
    NullableSet nullable;

    const std::set<SymbolId>& of(SymbolId id) const { return per_symbol.at(id.value); }
};

struct FollowSets {
    std::vector<std::set<SymbolId>> per_symbol;  // terminals only
    std::vector<bool> end_marker;                // true when $ is in FOLLOW

    const std::set<SymbolId>& of(SymbolId id) const { return per_symbol.at(id.value); }
    bool has_end(SymbolId id) const { return id.value < end_marker.size() && end_marker[id.value]; }
};

NullableSet compute_nullable(const Grammar& g);
FirstSets compute_first(const Grammar& g);

struct SequenceFirst {
    std::set<SymbolId> terminals;
    bool nullable = false;
};
/// FIRST of a symbol sequence; ({}, true) for the empty sequence.
SequenceFirst first_of_sequence(const Grammar& g, std::span<const SymbolId> seq,
                                const FirstSets& fs);

FollowSets compute_follow(const Grammar& g, const FirstSets& fs);

/// Dump format, one line per nonterminal in appearance order:
///   FIRST(A) = {a, b, eps}   -- members sorted lexicographically, eps last
///   FOLLOW(A) = {a, b, $}    -- same shape, $ sorts last
std::string format_first_sets(const Grammar& g, const FirstSets& fs);
std::string format_follow_sets(const Grammar& g, const FollowSets& fl);

}  // namespace ll1
