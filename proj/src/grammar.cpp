#include "ll1/grammar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ll1 {

namespace {

constexpr std::string_view kEpsToken = "@eps";

struct Interner {
    std::vector<SymbolEntry> symbols;
    std::map<std::string, SymbolId, std::less<>> by_name;

    SymbolId intern(std::string_view name) {
        if (auto it = by_name.find(name); it != by_name.end()) return it->second;
        SymbolId id{static_cast<std::uint32_t>(symbols.size())};
        symbols.push_back({std::string(name), SymbolKind::terminal});
        by_name.emplace(std::string(name), id);
        return id;
    }
};

}  // namespace

Grammar Grammar::from_rules(std::span<const RuleSpec> rules) {
    if (rules.empty()) throw GrammarError("empty grammar: no rules");

    Interner in;
    // Intern in appearance order and mark lhs occurrences as nonterminals.
    for (const RuleSpec& rule : rules) {
        if (rule.lhs.empty()) throw GrammarError("empty rule name");
        SymbolId lhs = in.intern(rule.lhs);
        in.symbols[lhs.value].kind = SymbolKind::nonterminal;
        for (const auto& alt : rule.alternatives) {
            bool is_eps = alt.size() == 1 && alt[0] == kEpsToken;
            if (is_eps) continue;
            for (const std::string& sym : alt) {
                if (sym.empty()) throw GrammarError("empty symbol name in rule '" + rule.lhs + "'");
                if (sym == kEpsToken)
                    throw GrammarError("'@eps' must be the only symbol of an alternative (rule '" +
                                       rule.lhs + "')");
                in.intern(sym);
            }
        }
    }

    Grammar g;
    g.symbols_ = std::move(in.symbols);
    g.start_ = in.by_name.at(rules.front().lhs);
    g.by_lhs_.resize(g.symbols_.size());

    for (const RuleSpec& rule : rules) {
        SymbolId lhs = in.by_name.at(rule.lhs);
        for (const auto& alt : rule.alternatives) {
            Production p;
            p.index = g.productions_.size();
            p.lhs = lhs;
            if (!(alt.size() == 1 && alt[0] == kEpsToken))
                for (const std::string& sym : alt) p.rhs.push_back(in.by_name.at(sym));
            for (std::size_t prev : g.by_lhs_[lhs.value])
                if (g.productions_[prev].rhs == p.rhs)
                    throw GrammarError("duplicate production: " + g.render(p));
            g.by_lhs_[lhs.value].push_back(p.index);
            g.productions_.push_back(std::move(p));
        }
    }
    return g;
}

std::optional<SymbolId> Grammar::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return SymbolId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

std::span<const std::size_t> Grammar::productions_of(SymbolId nt) const {
    return by_lhs_.at(nt.value);
}

std::vector<SymbolId> Grammar::terminals() const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].kind == SymbolKind::terminal) out.push_back(SymbolId{static_cast<std::uint32_t>(i)});
    return out;
}

std::vector<SymbolId> Grammar::nonterminals() const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].kind == SymbolKind::nonterminal) out.push_back(SymbolId{static_cast<std::uint32_t>(i)});
    return out;
}

std::string Grammar::render_rhs(std::span<const SymbolId> rhs) const {
    if (rhs.empty()) return std::string(kEpsToken);
    std::string out;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (i) out += ' ';
        out += name(rhs[i]);
    }
    return out;
}

std::string Grammar::render(const Production& p) const {
    return name(p.lhs) + "->" + render_rhs(p.rhs);
}

namespace {

struct GrammarLexer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    struct Tok {
        enum Kind { symbol, arrow, pipe, semi, eof } kind;
        std::string_view text;
        std::size_t line, col;
    };

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i, ++pos) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }

    bool starts_arrow() const {
        return pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>';
    }

    Tok next() {
        for (;;) {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                         text[pos] == '\n' || text[pos] == '\r'))
                advance(1);
            if (pos < text.size() && text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') advance(1);
                continue;
            }
            break;
        }
        if (pos >= text.size()) return {Tok::eof, {}, line, col};
        std::size_t l = line, c = col;
        if (starts_arrow()) {
            advance(2);
            return {Tok::arrow, text.substr(pos - 2, 2), l, c};
        }
        if (text[pos] == '|') {
            advance(1);
            return {Tok::pipe, text.substr(pos - 1, 1), l, c};
        }
        if (text[pos] == ';') {
            advance(1);
            return {Tok::semi, text.substr(pos - 1, 1), l, c};
        }
        std::size_t begin = pos;
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '|' ||
                ch == ';' || ch == '#' || starts_arrow())
                break;
            advance(1);
        }
        return {Tok::symbol, text.substr(begin, pos - begin), l, c};
    }
};

}  // namespace

Grammar parse_grammar_text(std::string_view text) {
    GrammarLexer lex{text};
    std::vector<RuleSpec> rules;

    auto tok = lex.next();
    while (tok.kind != GrammarLexer::Tok::eof) {
        if (tok.kind != GrammarLexer::Tok::symbol)
            throw GrammarError("expected rule name, got '" + std::string(tok.text) + "'",
                               tok.line, tok.col);
        RuleSpec rule;
        rule.lhs = std::string(tok.text);
        tok = lex.next();
        if (tok.kind != GrammarLexer::Tok::arrow)
            throw GrammarError("expected '->' after '" + rule.lhs + "'", tok.line, tok.col);

        std::vector<std::string> alt;
        for (tok = lex.next();; tok = lex.next()) {
            if (tok.kind == GrammarLexer::Tok::symbol) {
                alt.emplace_back(tok.text);
            } else if (tok.kind == GrammarLexer::Tok::pipe) {
                rule.alternatives.push_back(std::move(alt));
                alt.clear();
            } else if (tok.kind == GrammarLexer::Tok::semi) {
                rule.alternatives.push_back(std::move(alt));
                break;
            } else {
                throw GrammarError("unterminated rule '" + rule.lhs + "' (missing ';')",
                                   tok.line, tok.col);
            }
        }
        rules.push_back(std::move(rule));
        tok = lex.next();
    }

    if (rules.empty()) throw GrammarError("empty grammar: no rules");
    return Grammar::from_rules(rules);
}

std::string serialize_grammar(const Grammar& g) {
    std::string out;
    auto prods = g.productions();
    for (std::size_t i = 0; i < prods.size();) {
        SymbolId lhs = prods[i].lhs;
        out += g.name(lhs);
        out += " ->";
        bool first = true;
        for (; i < prods.size() && prods[i].lhs == lhs; ++i) {
            if (!first) out += " |";
            first = false;
            out += ' ';
            out += g.render_rhs(prods[i].rhs);
        }
        out += " ;\n";
    }
    return out;
}

}  // namespace ll1
