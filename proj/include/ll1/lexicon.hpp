#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ll1 {

/// Raised for unreadable dictionary files and conflicting entries. line is
/// 1-based, zero when not tied to a position.
struct LexiconError : std::runtime_error {
    explicit LexiconError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(msg), line(line) {}
    std::size_t line;
};

/// Word -> POS-tag dictionary. Every word has exactly one tag.
struct Lexicon {
    std::map<std::string, std::string, std::less<>> entries;

    std::optional<std::string_view> tag_of(std::string_view word) const {
        auto it = entries.find(word);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return entries.size(); }
};

/// Reads the flat dictionary XML shape:
///   <?xml ...?> <!-- comment --> <WORD> <word>tag</word> ... </WORD>
/// Element name = word, trimmed text = tag. Only the entities &lt; &gt;
/// &amp; are recognized. Throws LexiconError on malformed documents, nested
/// or attributed elements, empty tag text, and conflicting duplicates.
Lexicon load_lexicon_xml(std::string_view text);

/// Reads `word<TAB>tag` lines; `#` comments and blank lines are skipped.
Lexicon load_lexicon_tsv(std::string_view text);

/// Union of two dictionaries. Identical duplicates collapse; a word mapped
/// to two different tags throws LexiconError.
Lexicon merge_lexicons(const Lexicon& a, const Lexicon& b);

struct Token {
    std::string surface;
    std::size_t position = 0;  // 0-based token index within its sentence
    friend bool operator==(const Token&, const Token&) = default;
};

struct TaggedSentence {
    std::vector<Token> tokens;
    std::vector<std::string> tags;  // same length as tokens
};

struct UnknownWordError : std::runtime_error {
    UnknownWordError(std::string surface_, std::size_t position_)
        : std::runtime_error("unknown word '" + surface_ + "' at token " +
                             std::to_string(position_)),
          surface(std::move(surface_)),
          position(position_) {}
    std::string surface;
    std::size_t position;
};

/// Splits on the sentence terminators danda (U+0964), '?' and '!'. The
/// terminator is dropped, empty/whitespace-only segments are skipped, and a
/// trailing segment without a terminator still counts as a sentence.
std::vector<std::string> split_sentences(std::string_view text);

/// Whitespace-tokenizes one sentence, strips surrounding punctuation
/// (quotes, commas, stray terminators) from each token, and looks every
/// token up in the lexicon. Throws UnknownWordError at the first miss.
TaggedSentence tag_sentence(const Lexicon& lex, std::string_view sentence);

}  // namespace ll1
