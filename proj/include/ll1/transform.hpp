#pragma once

#include <vector>

#include "ll1/grammar.hpp"

namespace ll1 {

/// One factoring opportunity: productions of `lhs` (indices in order) that
/// share the nonempty longest common prefix `prefix`.
struct PrefixGroup {
    SymbolId lhs;
    std::vector<SymbolId> prefix;
    std::vector<std::size_t> productions;
};

/// Maximal groups of two or more same-lhs productions sharing a first symbol,
/// each with the longest common prefix of the whole group. This is exactly
/// the set of groups left_factor would rewrite next. Ordered by the group's
/// earliest production index. Empty for a left-factored grammar.
std::vector<PrefixGroup> common_prefix_report(const Grammar& g);

/// Classic left factoring: repeatedly replace a group of productions
/// A -> a b1 | a b2 | ... (a = the group's longest common prefix) with
/// A -> a A1 ; A1 -> b1 | b2 | ... where A1 is the lhs name suffixed with the
/// smallest positive integer not yet naming a symbol. The rewritten
/// production takes the group's first slot; the new nonterminal's
/// productions are appended. Preserves the generated language.
Grammar left_factor(const Grammar& g);

/// Cycles in the left-corner relation (A relates to B when some production
/// A -> g B d has an all-nullable g). Each cycle is reported as the set of
/// nonterminals of one strongly connected component that contains an edge
/// cycle, members in id order, components ordered by smallest member.
/// Empty result means no immediate or indirect left recursion.
std::vector<std::vector<SymbolId>> detect_left_recursion(const Grammar& g);

}  // namespace ll1
