#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "ll1/lexicon.hpp"
#include "support/helpers.hpp"

using namespace ll1;
using ll1::testing::data_path;
using ll1::testing::slurp;

TEST_CASE("the shipped dictionary XML holds exactly six entries") {
    Lexicon lex = load_lexicon_xml(slurp(data_path("bangla/lexicon.xml")));
    std::map<std::string, std::string, std::less<>> expected{
        {"আমি", "pronoun"},  {"খাই", "verb"},    {"একটি", "modifier"},
        {"এবং", "conjunction"}, {"আমরা", "pronoun"}, {"না", "neg"},
    };
    CHECK(lex.entries == expected);
}

TEST_CASE("dictionary XML accepts prolog, comments and entities") {
    Lexicon lex = load_lexicon_xml(
        "<?xml version=\"1.0\"?>\n"
        "<!-- head -->\n"
        "<R>\n"
        "  <!-- between entries -->\n"
        "  <a>&lt;x&gt;</a>\n"
        "  <b>  noun  </b>\n"
        "</R>\n"
        "<!-- tail -->\n");
    CHECK(lex.size() == 2);
    CHECK(lex.tag_of("a") == "<x>");   // entities decoded
    CHECK(lex.tag_of("b") == "noun");  // tag text trimmed
    CHECK(!lex.tag_of("c").has_value());
}

TEST_CASE("malformed dictionary XML is rejected") {
    CHECK_THROWS_AS(load_lexicon_xml(""), LexiconError);
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>noun</a>"), LexiconError);  // unterminated
    CHECK_THROWS_AS(load_lexicon_xml("<R><a k=\"v\">noun</a></R>"), LexiconError);  // attribute
    CHECK_THROWS_AS(load_lexicon_xml("<R><a><b>noun</b></a></R>"), LexiconError);   // nested
    CHECK_THROWS_AS(load_lexicon_xml("<R><a/></R>"), LexiconError);     // no tag text
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>  </a></R>"), LexiconError);  // blank tag text
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>noun</b></R>"), LexiconError);  // mismatched close
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>noun</a></R>junk"), LexiconError);  // trailing text
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>&apos;</a></R>"), LexiconError);  // entity support
    CHECK_THROWS_AS(load_lexicon_xml("<R><a>verb</a><a>noun</a></R>"), LexiconError);  // conflict
}

TEST_CASE("identical duplicate XML entries collapse") {
    Lexicon lex = load_lexicon_xml("<R><a>noun</a><a>noun</a></R>");
    CHECK(lex.size() == 1);
}

TEST_CASE("dictionary TSV parsing") {
    Lexicon lex = load_lexicon_tsv("# comment\n\n  ami \t pronoun \nbhat\tnoun\nbhat\tnoun\n");
    CHECK(lex.size() == 2);  // word and tag trimmed, identical duplicate collapsed
    CHECK(lex.tag_of("ami") == "pronoun");
    CHECK(lex.tag_of("bhat") == "noun");

    CHECK_THROWS_AS(load_lexicon_tsv("no-tab-here\n"), LexiconError);
    CHECK_THROWS_AS(load_lexicon_tsv("a\t\n"), LexiconError);        // empty tag
    CHECK_THROWS_AS(load_lexicon_tsv("\tnoun\n"), LexiconError);     // empty word
    CHECK_THROWS_AS(load_lexicon_tsv("a\tx\ty\n"), LexiconError);    // tab inside tag

    try {
        load_lexicon_tsv("a\tnoun\na\tverb\n");
        FAIL("conflict not detected");
    } catch (const LexiconError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }
}

TEST_CASE("merging dictionaries unions entries and flags conflicts") {
    Lexicon a = load_lexicon_tsv("x\tnoun\ny\tverb\n");
    Lexicon b = load_lexicon_tsv("y\tverb\nz\tneg\n");
    Lexicon merged = merge_lexicons(a, b);
    CHECK(merged.size() == 3);
    CHECK(merged.tag_of("z") == "neg");

    Lexicon clash = load_lexicon_tsv("y\tnoun\n");
    CHECK_THROWS_AS(merge_lexicons(a, clash), LexiconError);
}

TEST_CASE("the shipped XML and TSV dictionaries merge cleanly") {
    Lexicon xml = load_lexicon_xml(slurp(data_path("bangla/lexicon.xml")));
    Lexicon tsv = load_lexicon_tsv(slurp(data_path("bangla/lexicon.tsv")));
    Lexicon merged = merge_lexicons(xml, tsv);
    CHECK(merged.size() == 41);  // every XML word reappears in the TSV with the same tag
    CHECK(merged.size() == tsv.size());
}

TEST_CASE("split_sentences handles all three terminators") {
    using V = std::vector<std::string>;
    CHECK(split_sentences("আমি ভাত খাই। তুমি খেলে? সে চলে!") ==
          V{"আমি ভাত খাই", "তুমি খেলে", "সে চলে"});
    CHECK(split_sentences("ভাত খাই") == V{"ভাত খাই"});  // no terminator still one sentence
    CHECK(split_sentences("ভাত খাই।") == V{"ভাত খাই"});
    CHECK(split_sentences("।। ??") == V{});  // empty segments dropped
    CHECK(split_sentences("") == V{});
    CHECK(split_sentences("  \n ") == V{});
}

TEST_CASE("tag_sentence strips edge punctuation and records positions") {
    Lexicon lex = load_lexicon_tsv("আমি\tpronoun\nভাত\tnoun\nখাই\tverb\n");
    TaggedSentence ts = tag_sentence(lex, "“আমি” ভাত, খাই।");
    REQUIRE(ts.tokens.size() == 3);
    CHECK(ts.tokens[0] == Token{"আমি", 0});
    CHECK(ts.tokens[1] == Token{"ভাত", 1});
    CHECK(ts.tokens[2] == Token{"খাই", 2});
    CHECK(ts.tags == std::vector<std::string>{"pronoun", "noun", "verb"});

    CHECK(tag_sentence(lex, "").tokens.empty());
    CHECK(tag_sentence(lex, "  \t ").tokens.empty());
    CHECK(tag_sentence(lex, "',' “”").tokens.empty());  // tokens that strip to nothing vanish
}

TEST_CASE("unknown words abort tagging with surface and position") {
    Lexicon lex = load_lexicon_tsv("আমি\tpronoun\n");
    try {
        tag_sentence(lex, "আমি অচেনা");
        FAIL("lookup miss not detected");
    } catch (const UnknownWordError& e) {
        CHECK(e.surface == "অচেনা");
        CHECK(e.position == 1);
        CHECK(std::string(e.what()) == "unknown word 'অচেনা' at token 1");
    }
}

TEST_CASE("the worked example sentence tags as modifier noun noun verb") {
    Lexicon merged = merge_lexicons(load_lexicon_xml(slurp(data_path("bangla/lexicon.xml"))),
                                    load_lexicon_tsv(slurp(data_path("bangla/lexicon.tsv"))));
    TaggedSentence ts = tag_sentence(merged, "একটি ছেলে বই পড়ছে");
    CHECK(ts.tags == std::vector<std::string>{"modifier", "noun", "noun", "verb"});
}
