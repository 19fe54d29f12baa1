#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ll1/driver.hpp"
#include "ll1/grammar.hpp"
#include "ll1/sets.hpp"
#include "ll1/table.hpp"
#include "support/enumerate.hpp"
#include "support/helpers.hpp"
#include "support/random_grammar.hpp"

using namespace ll1;
using ll1::testing::data_path;
using ll1::testing::slurp;

namespace {

BuildResult build(const Grammar& g) {
    FirstSets fs = compute_first(g);
    return build_table(g, fs, compute_follow(g, fs));
}

// The loaded table's cells index into the extended grammar it ships with.
LoadedTable transcribed_table(const Grammar& g) {
    return load_table(slurp(data_path("bangla/printed_table.tbl")), g);
}

std::vector<std::string> tags(std::initializer_list<const char*> init) {
    return {init.begin(), init.end()};
}

std::vector<std::string> actions(const ParseResult& r) {
    std::vector<std::string> out;
    for (const MoveRecord& m : r.moves) out.push_back(m.action);
    return out;
}

}  // namespace

TEST_CASE("accepting trace matches the published worked example") {
    Grammar g = parse_grammar_text(slurp(data_path("bangla/grammar.g")));
    LoadedTable lt = transcribed_table(g);
    std::vector<std::string> surfaces = tags({"একটি", "ছেলে", "বই", "পড়ছে"});
    ParseResult r = parse_predictive(lt.table, lt.grammar,
                                     tags({"modifier", "noun", "noun", "verb"}), {}, &surfaces);

    CHECK(r.outcome.accepted);
    CHECK(format_trace(r.moves) ==
          "Stack\tInput\tAction\n"
          "$ S\tmodifier noun noun verb $\t\n"
          "$ VP NP\tmodifier noun noun verb $\tS->NP VP\n"
          "$ VP noun modifier\tmodifier noun noun verb $\tNP->modifier noun\n"
          "$ VP noun\tnoun noun verb $\tmatched modifier\n"
          "$ VP\tnoun verb $\tmatched noun\n"
          "$ VP1 noun\tnoun verb $\tVP->noun VP1\n"
          "$ VP1\tverb $\tmatched noun\n"
          "$ VP2 verb\tverb $\tVP1->verb VP2\n"
          "$ VP2\t$\tmatched verb\n"
          "$\t$\tVP2->@eps\n"
          "$\t$\tSentence is accepted\n");

    REQUIRE(r.tree.has_value());
    CHECK(tree_to_bracketed(*r.tree) ==
          "(S (NP (modifier একটি) (noun ছেলে)) (VP (noun বই) (VP1 (verb পড়ছে) (VP2 @eps))))");
}

TEST_CASE("rejecting trace matches the published error example") {
    Grammar g = parse_grammar_text(slurp(data_path("bangla/grammar.g")));
    LoadedTable lt = transcribed_table(g);
    ParseResult r = parse_predictive(lt.table, lt.grammar, tags({"noun", "noun"}));

    CHECK(!r.outcome.accepted);
    REQUIRE(r.outcome.reject.has_value());
    const RejectInfo& info = *r.outcome.reject;
    CHECK(info.reason == RejectReason::empty_cell);
    CHECK(info.position == 2);
    CHECK(info.stack_top == "NP3");
    CHECK(info.expected == tags({"adjective", "aw", "conjunction", "noun", "pronoun", "verb"}));

    CHECK(format_trace(r.moves) ==
          "Stack\tInput\tAction\n"
          "$ S\tnoun noun $\t\n"
          "$ VP NP\tnoun noun $\tS->NP VP\n"
          "$ VP NP1 noun\tnoun noun $\tNP->noun NP1\n"
          "$ VP NP1\tnoun $\tmatched noun\n"
          "$ VP NP3 noun\tnoun $\tNP1->noun NP3\n"
          "$ VP NP3\t$\tmatched noun\n"
          "$ VP NP3\t$\tSentence is rejected (empty-cell)\n");
}

TEST_CASE("the other published traces are accepted") {
    Grammar g = parse_grammar_text(slurp(data_path("bangla/grammar.g")));
    LoadedTable lt = transcribed_table(g);
    CHECK(parse_predictive(lt.table, lt.grammar, tags({"pronoun", "verb", "noun"})).outcome.accepted);
    CHECK(parse_predictive(lt.table, lt.grammar, tags({"noun", "pronoun", "verb"})).outcome.accepted);
}

TEST_CASE("reject reasons carry position, stack top and expected set") {
    SUBCASE("terminal mismatch") {
        Grammar g = parse_grammar_text("S -> a b ;");
        BuildResult b = build(g);
        ParseResult r = parse_predictive(b.table, g, tags({"a", "a"}));
        REQUIRE(r.outcome.reject.has_value());
        CHECK(r.outcome.reject->reason == RejectReason::terminal_mismatch);
        CHECK(r.outcome.reject->position == 1);
        CHECK(r.outcome.reject->stack_top == "b");
        CHECK(r.outcome.reject->expected == tags({"b"}));
    }
    SUBCASE("input exhausted while the stack still demands a terminal") {
        Grammar g = parse_grammar_text("S -> a b ;");
        BuildResult b = build(g);
        ParseResult r = parse_predictive(b.table, g, tags({"a"}));
        REQUIRE(r.outcome.reject.has_value());
        CHECK(r.outcome.reject->reason == RejectReason::input_exhausted_stack_nonempty);
        CHECK(r.outcome.reject->position == 1);
        CHECK(r.outcome.reject->stack_top == "b");
        CHECK(r.outcome.reject->expected == tags({"b"}));
    }
    SUBCASE("input remains after the stack empties") {
        Grammar g = parse_grammar_text("S -> a ;");
        BuildResult b = build(g);
        ParseResult r = parse_predictive(b.table, g, tags({"a", "a"}));
        REQUIRE(r.outcome.reject.has_value());
        CHECK(r.outcome.reject->reason == RejectReason::input_remaining_stack_empty);
        CHECK(r.outcome.reject->position == 1);
        CHECK(r.outcome.reject->stack_top == "$");
        CHECK(r.outcome.reject->expected == tags({"$"}));
    }
    SUBCASE("expansion budget exhausts on left recursion") {
        Grammar g = parse_grammar_text("A -> A | a ;");
        BuildResult b = build(g);
        DriverPolicy policy{DriverMode::deterministic, 50};
        ParseResult r = parse_predictive(b.table, g, tags({"a"}), policy);
        REQUIRE(r.outcome.reject.has_value());
        CHECK(r.outcome.reject->reason == RejectReason::budget_exhausted);
        CHECK(r.outcome.reject->expected.empty());

        DriverPolicy bt{DriverMode::backtracking, 50};
        CHECK(!parse_predictive(b.table, g, tags({"a"}), bt).outcome.accepted);
    }
}

TEST_CASE("backtracking explores alternatives the deterministic driver skips") {
    Grammar g = parse_grammar_text("S -> a S a | a ;");
    BuildResult b = build(g);
    DriverPolicy bt{DriverMode::backtracking, 100000};

    CHECK(!parse_predictive(b.table, g, tags({"a", "a", "a"})).outcome.accepted);
    ParseResult three = parse_predictive(b.table, g, tags({"a", "a", "a"}), bt);
    CHECK(three.outcome.accepted);
    CHECK(actions(three) == std::vector<std::string>{"", "S->a S a", "matched a", "S->a",
                                                     "matched a", "matched a", "accept"});

    // No even-length string is in the language; the reported failure is the
    // first explored path that got furthest into the input. That path keeps
    // choosing S->a S a and dies on the empty (S, $) cell.
    ParseResult two = parse_predictive(b.table, g, tags({"a", "a"}), bt);
    CHECK(!two.outcome.accepted);
    REQUIRE(two.outcome.reject.has_value());
    CHECK(two.outcome.reject->reason == RejectReason::empty_cell);
    CHECK(two.outcome.reject->position == 2);
    CHECK(two.outcome.reject->stack_top == "S");
    CHECK(two.outcome.reject->expected == tags({"a"}));
    CHECK(format_trace(two.moves).ends_with("Sentence is rejected (empty-cell)\n"));
}

TEST_CASE("backtracking replays its winning choices as a linear trace") {
    Grammar g = parse_grammar_text(slurp(data_path("bangla/grammar.g")));
    BuildResult b = build(g);

    CHECK(!parse_predictive(b.table, g, tags({"conjunction"})).outcome.accepted);

    DriverPolicy bt{DriverMode::backtracking, 100000};
    ParseResult r = parse_predictive(b.table, g, tags({"conjunction"}), bt);
    CHECK(r.outcome.accepted);
    CHECK(actions(r) == std::vector<std::string>{"", "S->NP VP", "NP->NP2", "NP2->@eps",
                                                 "VP->conjunction", "matched conjunction",
                                                 "accept"});
}

TEST_CASE("expression grammar drives deterministically") {
    Grammar g = parse_grammar_text(slurp(data_path("examples/expr.g")));
    BuildResult b = build(g);
    REQUIRE(b.conflicts.empty());

    ParseResult good = parse_predictive(b.table, g, tags({"id", "+", "id", "*", "id"}));
    CHECK(good.outcome.accepted);

    ParseResult bad = parse_predictive(b.table, g, tags({"id", "+", "*", "id"}));
    CHECK(!bad.outcome.accepted);
    REQUIRE(bad.outcome.reject.has_value());
    CHECK(bad.outcome.reject->reason == RejectReason::empty_cell);
    CHECK(bad.outcome.reject->position == 2);
    CHECK(bad.outcome.reject->expected == tags({"(", "id"}));

    ParseResult small = parse_predictive(b.table, g, tags({"id", "+", "id"}));
    REQUIRE(small.tree.has_value());
    CHECK(tree_to_bracketed(*small.tree) ==
          "(E (T (F (id)) (T' @eps)) (E' (+) (T (F (id)) (T' @eps)) (E' @eps)))");

    // On a conflict-free table both policies agree everywhere.
    DriverPolicy bt{DriverMode::backtracking, 100000};
    for (auto input : {tags({}), tags({"id"}), tags({"(", "id", ")"}), tags({"id", "id"}),
                       tags({"(", "id"}), tags({"id", "*", "(", "id", "+", "id", ")"})}) {
        CAPTURE(input.size());
        CHECK(parse_predictive(b.table, g, input).outcome.accepted ==
              parse_predictive(b.table, g, input, bt).outcome.accepted);
    }
}

TEST_CASE("empty input is accepted exactly when the start symbol derives epsilon") {
    Grammar nullable = parse_grammar_text("S -> a S | @eps ;");
    Grammar strict = parse_grammar_text("S -> a ;");
    CHECK(parse_predictive(build(nullable).table, nullable, {}).outcome.accepted);
    ParseResult r = parse_predictive(build(strict).table, strict, {});
    CHECK(!r.outcome.accepted);
    REQUIRE(r.outcome.reject.has_value());
    CHECK(r.outcome.reject->reason == RejectReason::empty_cell);
    CHECK(r.outcome.reject->position == 0);
    CHECK(r.outcome.reject->stack_top == "S");
}

TEST_CASE("unknown tags raise an error distinct from rejection") {
    Grammar g = parse_grammar_text(slurp(data_path("examples/expr.g")));
    BuildResult b = build(g);
    try {
        parse_predictive(b.table, g, tags({"id", "neg"}));
        FAIL("unknown tag not detected");
    } catch (const UnknownTerminalError& e) {
        CHECK(e.tag == "neg");
        CHECK(e.position == 1);
        CHECK(std::string(e.what()) == "unknown terminal 'neg' at token 1");
    }
}

TEST_CASE("surfaces must parallel the tag sequence") {
    Grammar g = parse_grammar_text("S -> a ;");
    BuildResult b = build(g);
    std::vector<std::string> surfaces{"x", "y"};
    CHECK_THROWS_AS(parse_predictive(b.table, g, tags({"a"}), {}, &surfaces),
                    std::invalid_argument);
}

TEST_CASE("backtracking verdicts agree with brute-force derivability") {
    std::mt19937 rng(271828);
    // A small budget keeps replayed failure traces (and their per-row stack
    // snapshots) cheap on stack-growing grammars; budget-bound verdicts are
    // skipped below anyway.
    DriverPolicy bt{DriverMode::backtracking, 600};
    int grammars_checked = 0;
    while (grammars_checked < 25) {
        Grammar g = testing::random_grammar(rng);
        testing::EnumeratedLanguage lang = testing::derivable_strings(g, 3);
        if (!lang.complete) continue;
        ++grammars_checked;

        BuildResult b = build(g);
        std::vector<std::string> alphabet;
        for (SymbolId t : g.terminals()) alphabet.push_back(g.name(t));

        // Every terminal string of length <= 3 over the grammar's alphabet.
        std::vector<std::vector<std::string>> candidates{{}};
        for (std::size_t len = 0; len < 3; ++len) {
            std::size_t begin = 0, end = candidates.size();
            for (std::size_t i = begin; i < end; ++i)
                if (candidates[i].size() == len)
                    for (const std::string& t : alphabet) {
                        auto next = candidates[i];
                        next.push_back(t);
                        candidates.push_back(std::move(next));
                    }
        }

        for (const auto& candidate : candidates) {
            ParseResult r = parse_predictive(b.table, g, candidate, bt);
            if (!r.outcome.accepted &&
                r.outcome.reject->reason == RejectReason::budget_exhausted)
                continue;  // search cut short: no verdict to compare
            CAPTURE(serialize_grammar(g));
            bool derivable = lang.strings.contains(candidate);
            CHECK(r.outcome.accepted == derivable);
        }
    }
}
