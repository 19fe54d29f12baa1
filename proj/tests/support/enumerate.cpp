#include "support/enumerate.hpp"

#include <deque>

namespace ll1::testing {

EnumeratedLanguage derivable_strings(const Grammar& g, std::size_t max_len, std::size_t budget) {
    using Form = std::vector<SymbolId>;
    EnumeratedLanguage out;
    // Epsilon-heavy grammars can grow forms without adding terminals; forms
    // past this length are abandoned (clearing `complete`) so memory stays
    // proportional to the budget.
    const std::size_t max_form = 4 * max_len + 32;
    std::set<Form> seen;
    std::deque<Form> work;
    work.push_back({g.start()});
    seen.insert(work.front());

    while (!work.empty()) {
        Form form = std::move(work.front());
        work.pop_front();

        std::size_t leftmost = form.size();
        std::size_t terminal_count = 0;
        for (std::size_t i = 0; i < form.size(); ++i) {
            if (g.is_nonterminal(form[i])) {
                if (leftmost == form.size()) leftmost = i;
            } else {
                ++terminal_count;
            }
        }
        if (leftmost == form.size()) {
            std::vector<std::string> names;
            names.reserve(form.size());
            for (SymbolId t : form) names.push_back(g.name(t));
            out.strings.insert(std::move(names));
            continue;
        }

        for (std::size_t idx : g.productions_of(form[leftmost])) {
            const Production& p = g.productions()[idx];
            std::size_t new_terminals = 0;
            for (SymbolId sym : p.rhs)
                if (g.is_terminal(sym)) ++new_terminals;
            if (terminal_count + new_terminals > max_len) continue;

            if (form.size() - 1 + p.rhs.size() > max_form) {
                out.complete = false;
                continue;
            }
            Form next;
            next.reserve(form.size() - 1 + p.rhs.size());
            next.insert(next.end(), form.begin(), form.begin() + leftmost);
            next.insert(next.end(), p.rhs.begin(), p.rhs.end());
            next.insert(next.end(), form.begin() + leftmost + 1, form.end());
            if (!seen.insert(next).second) continue;
            if (seen.size() > budget) {
                out.complete = false;
                return out;
            }
            work.push_back(std::move(next));
        }
    }
    return out;
}

}  // namespace ll1::testing
