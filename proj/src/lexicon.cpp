#include "ll1/lexicon.hpp"

#include <algorithm>
#include <array>
#include <span>

namespace ll1 {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

void insert_entry(Lexicon& lex, std::string_view word, std::string_view tag, std::size_t line) {
    auto it = lex.entries.find(word);
    if (it != lex.entries.end()) {
        if (it->second != tag)
            throw LexiconError("conflicting tags for '" + std::string(word) + "': '" + it->second +
                                   "' vs '" + std::string(tag) + "'",
                               line);
        return;
    }
    lex.entries.emplace(std::string(word), std::string(tag));
}

// Byte-level cursor over the XML text; line is tracked for diagnostics.
struct XmlCursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    bool starts_with(std::string_view s) const { return text.substr(pos).starts_with(s); }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos < text.size(); ++i, ++pos)
            if (text[pos] == '\n') ++line;
    }

    void skip_space() {
        while (!eof() && is_space(peek())) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw LexiconError(msg, line); }

    void expect(std::string_view s, const std::string& what) {
        if (!starts_with(s)) fail("malformed XML: expected " + what);
        advance(s.size());
    }

    // Skips whitespace, <?...?> prologs and <!--...--> comments.
    void skip_misc() {
        for (;;) {
            skip_space();
            if (starts_with("<?")) {
                std::size_t end = text.find("?>", pos);
                if (end == std::string_view::npos) fail("unterminated XML prolog");
                advance(end + 2 - pos);
            } else if (starts_with("<!--")) {
                std::size_t end = text.find("-->", pos);
                if (end == std::string_view::npos) fail("unterminated XML comment");
                advance(end + 3 - pos);
            } else {
                return;
            }
        }
    }

    std::string_view read_name() {
        std::size_t begin = pos;
        while (!eof() && !is_space(peek()) && peek() != '>' && peek() != '/' && peek() != '<')
            advance();
        if (pos == begin) fail("malformed XML: missing element name");
        return text.substr(begin, pos - begin);
    }
};

std::string decode_entities(XmlCursor& cur, std::string_view raw) {
    static constexpr std::array<std::pair<std::string_view, char>, 3> kEntities{
        {{"&lt;", '<'}, {"&gt;", '>'}, {"&amp;", '&'}}};
    std::string out;
    for (std::size_t i = 0; i < raw.size();) {
        if (raw[i] != '&') {
            out += raw[i++];
            continue;
        }
        bool matched = false;
        for (const auto& [entity, ch] : kEntities)
            if (raw.substr(i).starts_with(entity)) {
                out += ch;
                i += entity.size();
                matched = true;
                break;
            }
        if (!matched) cur.fail("unsupported entity reference in '" + std::string(raw) + "'");
    }
    return out;
}

}  // namespace

Lexicon load_lexicon_xml(std::string_view text) {
    XmlCursor cur{text};
    cur.skip_misc();
    cur.expect("<", "root element");
    std::string root(cur.read_name());
    cur.skip_space();
    cur.expect(">", "'>' after root name (attributes are not supported)");

    Lexicon lex;
    for (;;) {
        cur.skip_misc();
        if (cur.eof()) cur.fail("missing </" + root + ">");
        if (cur.starts_with("</")) break;
        cur.expect("<", "child element");
        std::size_t child_line = cur.line;
        std::string word(cur.read_name());
        cur.skip_space();
        if (cur.starts_with("/>")) throw LexiconError("empty tag text for '" + word + "'", cur.line);
        cur.expect(">", "'>' after element name (attributes are not supported)");

        std::size_t text_begin = cur.pos;
        while (!cur.eof() && cur.peek() != '<') cur.advance();
        if (cur.eof()) cur.fail("unterminated element '" + word + "'");
        if (cur.starts_with("<") && !cur.starts_with("</"))
            cur.fail("nested element inside '" + word + "'");
        std::string tag(trim(decode_entities(cur, text.substr(text_begin, cur.pos - text_begin))));
        if (tag.empty()) throw LexiconError("empty tag text for '" + word + "'", child_line);

        cur.expect("</", "closing tag");
        std::string closing(cur.read_name());
        if (closing != word)
            cur.fail("mismatched closing tag: <" + word + "> closed by </" + closing + ">");
        cur.skip_space();
        cur.expect(">", "'>' of closing tag");

        insert_entry(lex, word, tag, child_line);
    }

    cur.expect("</", "closing root tag");
    std::string closing(cur.read_name());
    if (closing != root) cur.fail("mismatched root closing tag </" + closing + ">");
    cur.skip_space();
    cur.expect(">", "'>' of root closing tag");
    cur.skip_misc();
    if (!cur.eof()) cur.fail("trailing content after </" + root + ">");
    return lex;
}

Lexicon load_lexicon_tsv(std::string_view text) {
    Lexicon lex;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (trim(line).empty() || trim(line).front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw LexiconError("expected 'word<TAB>tag'", number);
        std::string_view word = trim(line.substr(0, tab));
        std::string_view tag = trim(line.substr(tab + 1));
        if (word.empty() || tag.empty() || tag.find('\t') != std::string_view::npos)
            throw LexiconError("expected 'word<TAB>tag'", number);
        insert_entry(lex, word, tag, number);
    }
    return lex;
}

Lexicon merge_lexicons(const Lexicon& a, const Lexicon& b) {
    Lexicon out = a;
    for (const auto& [word, tag] : b.entries) insert_entry(out, word, tag, 0);
    return out;
}

namespace {

// Sentence terminators for split_sentences; the danda is U+0964.
constexpr std::array<std::string_view, 3> kTerminators{"।", "?", "!"};

// Punctuation stripped from token edges: ASCII and curly quotes, commas, and
// any terminator that survived sentence splitting.
constexpr std::array<std::string_view, 10> kEdgePunct{
    "\"", "'", ",", "“", "”", "‘", "’", "।", "?", "!"};

std::optional<std::size_t> match_any(std::string_view text, std::size_t pos,
                                     std::span<const std::string_view> needles) {
    for (std::string_view n : needles)
        if (text.substr(pos).starts_with(n)) return n.size();
    return std::nullopt;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    auto flush = [&](std::size_t end) {
        std::string_view segment = trim(text.substr(begin, end - begin));
        if (!segment.empty()) out.emplace_back(segment);
    };
    for (std::size_t i = 0; i < text.size();) {
        if (auto len = match_any(text, i, kTerminators)) {
            flush(i);
            i += *len;
            begin = i;
        } else {
            ++i;
        }
    }
    flush(text.size());
    return out;
}

TaggedSentence tag_sentence(const Lexicon& lex, std::string_view sentence) {
    TaggedSentence out;
    for (std::size_t i = 0; i < sentence.size();) {
        while (i < sentence.size() && is_space(sentence[i])) ++i;
        std::size_t begin = i;
        while (i < sentence.size() && !is_space(sentence[i])) ++i;
        if (i == begin) break;
        std::string_view token = sentence.substr(begin, i - begin);

        for (bool stripped = true; stripped && !token.empty();) {
            stripped = false;
            if (auto len = match_any(token, 0, kEdgePunct)) {
                token.remove_prefix(*len);
                stripped = true;
            }
            for (std::string_view p : kEdgePunct)
                if (token.ends_with(p)) {
                    token.remove_suffix(p.size());
                    stripped = true;
                    break;
                }
        }
        if (token.empty()) continue;

        std::size_t position = out.tokens.size();
        auto tag = lex.tag_of(token);
        if (!tag) throw UnknownWordError(std::string(token), position);
        out.tokens.push_back({std::string(token), position});
        out.tags.emplace_back(*tag);
    }
    return out;
}

}  // namespace ll1
