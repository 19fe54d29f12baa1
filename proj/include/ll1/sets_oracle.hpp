#pragma once

#include <cstddef>
#include <stdexcept>

#include "ll1/sets.hpp"

namespace ll1 {

/// Raised when an enumeration oracle exceeds its sentential-form budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FIRST sets and nullability computed by exhaustively enumerating leftmost
/// derivations from each nonterminal, up to `depth` expansion steps,
/// collecting leading terminals and empty-form reachability. Completely
/// independent of the fixpoint path in sets.cpp; intended to check it.
/// Requires at most 20 nonterminals; throws BudgetError after `max_forms`
/// distinct enumerated forms.
FirstSets brute_force_first_oracle(const Grammar& g, std::size_t depth,
                                   std::size_t max_forms = 1'000'000);

/// FOLLOW sets computed by enumerating sentential forms from the start
/// symbol padded with the end marker, expanding every nonterminal
/// occurrence, and recording each terminal (or end marker) immediately to
/// the right of a nonterminal. Same guards as the FIRST oracle.
FollowSets brute_force_follow_oracle(const Grammar& g, std::size_t depth,
                                     std::size_t max_forms = 1'000'000);

}  // namespace ll1
