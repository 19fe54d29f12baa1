#include "ll1/table.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ll1 {

namespace {

constexpr std::string_view kEpsToken = "@eps";
constexpr std::string_view kEndName = "$";

}  // namespace

ParseTable::ParseTable(std::vector<SymbolId> rows, std::vector<SymbolId> columns,
                       bool has_provenance)
    : rows_(std::move(rows)), columns_(std::move(columns)), has_provenance_(has_provenance) {
    cells_.assign(rows_.size(), std::vector<std::vector<CellEntry>>(columns_.size() + 1));
}

std::optional<std::size_t> ParseTable::row_index(SymbolId nonterminal) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i] == nonterminal) return i;
    return std::nullopt;
}

std::optional<std::size_t> ParseTable::column_index(SymbolId terminal) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == terminal) return i;
    return std::nullopt;
}

const std::vector<CellEntry>& ParseTable::cell(std::size_t row, std::size_t column) const {
    return cells_.at(row).at(column);
}

void ParseTable::add(std::size_t row, std::size_t column, CellEntry entry) {
    auto& cell = cells_.at(row).at(column);
    for (const CellEntry& present : cell)
        if (present.production == entry.production) return;
    cell.push_back(entry);
}

bool operator==(const ParseTable& a, const ParseTable& b) {
    if (a.rows_ != b.rows_ || a.columns_ != b.columns_) return false;
    for (std::size_t r = 0; r < a.rows_.size(); ++r)
        for (std::size_t c = 0; c <= a.columns_.size(); ++c) {
            const auto& ca = a.cells_[r][c];
            const auto& cb = b.cells_[r][c];
            if (ca.size() != cb.size()) return false;
            for (std::size_t i = 0; i < ca.size(); ++i)
                if (ca[i].production != cb[i].production) return false;
        }
    return true;
}

std::string_view to_string(ConflictKind kind) {
    switch (kind) {
        case ConflictKind::first_first: return "first-first";
        case ConflictKind::first_follow: return "first-follow";
        case ConflictKind::unknown: return "unknown";
    }
    return "unknown";
}

BuildResult build_table(const Grammar& g, const FirstSets& fs, const FollowSets& fl) {
    ParseTable t(g.nonterminals(), g.terminals(), /*has_provenance=*/true);

    for (const Production& p : g.productions()) {
        std::size_t row = *t.row_index(p.lhs);
        SequenceFirst sf = first_of_sequence(g, p.rhs, fs);
        for (SymbolId a : sf.terminals) t.add(row, *t.column_index(a), {p.index, false});
        if (sf.nullable) {
            for (SymbolId b : fl.of(p.lhs)) t.add(row, *t.column_index(b), {p.index, true});
            if (fl.has_end(p.lhs)) t.add(row, t.end_column(), {p.index, true});
        }
    }

    ConflictReport report = conflicts(t);
    return {std::move(t), std::move(report)};
}

ConflictReport conflicts(const ParseTable& t) {
    ConflictReport report;
    for (std::size_t r = 0; r < t.rows().size(); ++r)
        for (std::size_t c = 0; c <= t.columns().size(); ++c) {
            const auto& cell = t.cell(r, c);
            if (cell.size() < 2) continue;
            ConflictEntry entry;
            entry.row = t.rows()[r];
            if (c < t.columns().size()) entry.column = t.columns()[c];
            bool any_follow = false;
            for (const CellEntry& e : cell) {
                entry.productions.push_back(e.production);
                any_follow |= e.via_follow;
            }
            if (!t.has_provenance())
                entry.kind = ConflictKind::unknown;
            else
                entry.kind = any_follow ? ConflictKind::first_follow : ConflictKind::first_first;
            report.entries.push_back(std::move(entry));
        }
    return report;
}

std::string format_conflicts(const ConflictReport& report, const Grammar& g) {
    std::string out;
    for (const ConflictEntry& e : report.entries) {
        out += "M[";
        out += g.name(e.row);
        out += ", ";
        out += e.column ? g.name(*e.column) : std::string(kEndName);
        out += "] ";
        out += to_string(e.kind);
        out += ":";
        for (std::size_t i = 0; i < e.productions.size(); ++i) {
            out += i ? " / " : " ";
            out += g.render(g.production(e.productions[i]));
        }
        out += '\n';
    }
    return out;
}

std::string serialize_table(const ParseTable& t, const Grammar& g) {
    std::string out = "TABLE ";
    out += g.name(g.start());
    out += '\n';
    for (SymbolId col : t.columns()) {
        out += '\t';
        out += g.name(col);
    }
    out += '\t';
    out += kEndName;
    out += '\n';
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        out += g.name(t.rows()[r]);
        for (std::size_t c = 0; c <= t.columns().size(); ++c) {
            out += '\t';
            const auto& cell = t.cell(r, c);
            for (std::size_t i = 0; i < cell.size(); ++i) {
                if (i) out += " / ";
                out += g.render_rhs(g.production(cell[i].production).rhs);
            }
        }
        out += '\n';
    }
    return out;
}

namespace {

struct Line {
    std::string_view text;
    std::size_t number;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.ends_with('\r')) line.remove_suffix(1);
        std::string_view stripped = line;
        while (!stripped.empty() && (stripped.front() == ' ' || stripped.front() == '\t'))
            stripped.remove_prefix(1);
        if (stripped.empty() || stripped.front() == '#') continue;
        lines.push_back({line, number});
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    for (;;) {
        std::size_t tab = line.find('\t');
        fields.push_back(line.substr(0, tab));
        if (tab == std::string_view::npos) break;
        line = line.substr(tab + 1);
    }
    return fields;
}

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t begin = i;
        while (i < text.size() && text[i] != ' ') ++i;
        if (i > begin) words.push_back(text.substr(begin, i - begin));
    }
    return words;
}

}  // namespace

LoadedTable load_table(std::string_view text, const Grammar& g) {
    auto lines = content_lines(text);
    if (lines.empty()) throw GrammarError("empty table text");

    std::string_view head = lines[0].text;
    if (!head.starts_with("TABLE"))
        throw GrammarError("expected 'TABLE <start-symbol>'", lines[0].number);
    auto head_words = split_words(head.substr(5));
    if (head_words.size() != 1)
        throw GrammarError("expected 'TABLE <start-symbol>'", lines[0].number);
    auto start = g.find(head_words[0]);
    if (!start || !g.is_nonterminal(*start))
        throw GrammarError("unknown table start symbol '" + std::string(head_words[0]) + "'",
                           lines[0].number);

    if (lines.size() < 2) throw GrammarError("missing table header", lines[0].number);
    auto header = split_fields(lines[1].text);
    if (header.size() < 2 || !header.front().empty() || header.back() != kEndName)
        throw GrammarError("malformed table header (want empty field, columns, '$')",
                           lines[1].number);
    std::vector<SymbolId> columns;
    for (std::size_t i = 1; i + 1 < header.size(); ++i) {
        auto id = g.find(header[i]);
        if (!id || !g.is_terminal(*id))
            throw GrammarError("unknown terminal '" + std::string(header[i]) + "' in table header",
                               lines[1].number);
        if (std::ranges::find(columns, *id) != columns.end())
            throw GrammarError("duplicate column '" + std::string(header[i]) + "'",
                               lines[1].number);
        columns.push_back(*id);
    }

    // Original production indices survive the rebuild below because symbols
    // and productions are re-listed in their appearance order; synthetics go
    // at the end, one production each.
    std::vector<RuleSpec> rules;
    for (const Production& p : g.productions()) {
        RuleSpec rule{g.name(p.lhs), {{}}};
        if (p.rhs.empty())
            rule.alternatives[0].emplace_back(kEpsToken);
        else
            for (SymbolId s : p.rhs) rule.alternatives[0].push_back(g.name(s));
        rules.push_back(std::move(rule));
    }
    std::vector<std::pair<SymbolId, std::vector<SymbolId>>> synthetics;

    struct RawEntry {
        std::size_t row, column;
        std::size_t production;
    };
    std::vector<RawEntry> entries;
    std::vector<SymbolId> rows;

    for (std::size_t li = 2; li < lines.size(); ++li) {
        auto fields = split_fields(lines[li].text);
        auto row_id = g.find(fields[0]);
        if (!row_id || !g.is_nonterminal(*row_id))
            throw GrammarError("unknown row nonterminal '" + std::string(fields[0]) + "'",
                               lines[li].number);
        if (std::ranges::find(rows, *row_id) != rows.end())
            throw GrammarError("duplicate row '" + std::string(fields[0]) + "'", lines[li].number);
        if (fields.size() > columns.size() + 2)
            throw GrammarError("row '" + std::string(fields[0]) + "' has more cells than columns",
                               lines[li].number);
        std::size_t row = rows.size();
        rows.push_back(*row_id);

        for (std::size_t f = 1; f < fields.size(); ++f) {
            std::string_view cell = fields[f];
            if (split_words(cell).empty()) continue;
            std::size_t column = f - 1;
            // Split the cell on " / " into one rhs per part.
            std::vector<std::string_view> parts;
            for (std::string_view rest = cell;;) {
                std::size_t sep = rest.find(" / ");
                parts.push_back(rest.substr(0, sep));
                if (sep == std::string_view::npos) break;
                rest = rest.substr(sep + 3);
            }
            for (std::string_view part : parts) {
                auto words = split_words(part);
                if (words.empty())
                    throw GrammarError("malformed cell '" + std::string(cell) + "'",
                                       lines[li].number);
                std::vector<SymbolId> rhs;
                if (!(words.size() == 1 && words[0] == kEpsToken)) {
                    for (std::string_view w : words) {
                        if (w == kEpsToken)
                            throw GrammarError("'@eps' must stand alone in cell '" +
                                                   std::string(cell) + "'",
                                               lines[li].number);
                        auto id = g.find(w);
                        if (!id)
                            throw GrammarError("unknown symbol '" + std::string(w) + "' in cell (" +
                                                   std::string(fields[0]) + ", " +
                                                   std::string(f - 1 < columns.size()
                                                                   ? g.name(columns[f - 1])
                                                                   : std::string(kEndName)) +
                                                   ")",
                                               lines[li].number);
                        rhs.push_back(*id);
                    }
                }

                std::size_t production = g.productions().size();
                bool found = false;
                for (std::size_t idx : g.productions_of(*row_id))
                    if (g.production(idx).rhs == rhs) {
                        production = idx;
                        found = true;
                        break;
                    }
                if (!found) {
                    std::size_t si = 0;
                    for (; si < synthetics.size(); ++si)
                        if (synthetics[si].first == *row_id && synthetics[si].second == rhs) break;
                    if (si == synthetics.size()) synthetics.push_back({*row_id, rhs});
                    production = g.productions().size() + si;
                }
                entries.push_back({row, column, production});
            }
        }
    }

    for (const auto& [lhs, rhs] : synthetics) {
        RuleSpec rule{g.name(lhs), {{}}};
        if (rhs.empty())
            rule.alternatives[0].emplace_back(kEpsToken);
        else
            for (SymbolId s : rhs) rule.alternatives[0].push_back(g.name(s));
        rules.push_back(std::move(rule));
    }

    LoadedTable out{Grammar::from_rules(rules),
                    ParseTable(std::move(rows), std::move(columns), /*has_provenance=*/false),
                    {}};
    for (std::size_t i = 0; i < synthetics.size(); ++i)
        out.synthetic_productions.push_back(g.productions().size() + i);
    for (const RawEntry& e : entries) out.table.add(e.row, e.column, {e.production, false});
    return out;
}

TableDiff diff_tables(const ParseTable& a, const Grammar& ga, const ParseTable& b,
                      const Grammar& gb) {
    auto names = [](const std::vector<SymbolId>& ids, const Grammar& g) {
        std::vector<std::string> out;
        for (SymbolId id : ids) out.push_back(g.name(id));
        return out;
    };
    auto sorted = [](std::vector<std::string> v) {
        std::ranges::sort(v);
        return v;
    };
    std::vector<std::string> a_rows = names(a.rows(), ga), b_rows = names(b.rows(), gb);
    std::vector<std::string> a_cols = names(a.columns(), ga), b_cols = names(b.columns(), gb);
    if (sorted(a_rows) != sorted(b_rows))
        throw std::invalid_argument("table diff: row nonterminals differ");
    if (sorted(a_cols) != sorted(b_cols))
        throw std::invalid_argument("table diff: column terminals differ");

    auto index_of = [](const std::vector<std::string>& names, const std::string& name) {
        return static_cast<std::size_t>(std::ranges::find(names, name) - names.begin());
    };
    auto cell_texts = [](const ParseTable& t, const Grammar& g, std::size_t r, std::size_t c) {
        std::vector<std::string> out;
        for (const CellEntry& e : t.cell(r, c))
            out.push_back(g.render_rhs(g.production(e.production).rhs));
        return out;
    };

    TableDiff diff;
    for (std::size_t r = 0; r < a_rows.size(); ++r) {
        std::size_t br = index_of(b_rows, a_rows[r]);
        for (std::size_t c = 0; c <= a_cols.size(); ++c) {
            std::size_t bc = c < a_cols.size() ? index_of(b_cols, a_cols[c]) : b_cols.size();
            auto left = cell_texts(a, ga, r, c);
            auto right = cell_texts(b, gb, br, bc);
            if (left != right)
                diff.entries.push_back({a_rows[r],
                                        c < a_cols.size() ? a_cols[c] : std::string(kEndName),
                                        std::move(left), std::move(right)});
        }
    }
    return diff;
}

}  // namespace ll1
