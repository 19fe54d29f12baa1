#pragma once

#include <random>

#include "ll1/grammar.hpp"

namespace ll1::testing {

struct RandomGrammarOptions {
    std::size_t max_nonterminals = 6;
    std::size_t max_terminals = 4;
    std::size_t max_rhs = 4;           // symbols per alternative
    std::size_t max_alternatives = 3;  // per nonterminal
    bool allow_epsilon = true;
};

/// Seeded random CFG over nonterminals A.. and terminals a... Every
/// nonterminal has at least one alternative and is reachable from the start
/// symbol (candidates with unreachable nonterminals are re-rolled). Built
/// purely from RuleSpecs; never consults the analyses under test.
Grammar random_grammar(std::mt19937& rng, const RandomGrammarOptions& opts = {});

}  // namespace ll1::testing
