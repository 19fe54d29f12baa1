#include "ll1/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ll1/sets.hpp"

namespace ll1 {

namespace {

// Name-level production used while rewriting.
struct NameProd {
    std::string lhs;
    std::vector<std::string> rhs;
};

std::vector<NameProd> to_name_prods(const Grammar& g) {
    std::vector<NameProd> out;
    for (const Production& p : g.productions()) {
        NameProd np;
        np.lhs = g.name(p.lhs);
        for (SymbolId s : p.rhs) np.rhs.push_back(g.name(s));
        out.push_back(std::move(np));
    }
    return out;
}

Grammar from_name_prods(const std::vector<NameProd>& prods) {
    std::vector<RuleSpec> rules;
    rules.reserve(prods.size());
    for (const NameProd& p : prods)
        rules.push_back({p.lhs, {p.rhs.empty() ? std::vector<std::string>{"@eps"} : p.rhs}});
    return Grammar::from_rules(rules);
}

// Indices of all productions with the same lhs and the same first symbol as
// prods[i] (including i itself), in order. Epsilon productions never group.
std::vector<std::size_t> first_symbol_class(const std::vector<NameProd>& prods, std::size_t i) {
    std::vector<std::size_t> cls;
    if (prods[i].rhs.empty()) return cls;
    for (std::size_t j = 0; j < prods.size(); ++j)
        if (prods[j].lhs == prods[i].lhs && !prods[j].rhs.empty() &&
            prods[j].rhs.front() == prods[i].rhs.front())
            cls.push_back(j);
    return cls;
}

std::vector<std::string> longest_common_prefix(const std::vector<NameProd>& prods,
                                               const std::vector<std::size_t>& cls) {
    std::vector<std::string> prefix = prods[cls.front()].rhs;
    for (std::size_t j : cls) {
        const auto& rhs = prods[j].rhs;
        std::size_t k = 0;
        while (k < prefix.size() && k < rhs.size() && prefix[k] == rhs[k]) ++k;
        prefix.resize(k);
    }
    return prefix;
}

}  // namespace

std::vector<PrefixGroup> common_prefix_report(const Grammar& g) {
    auto prods = to_name_prods(g);
    std::vector<PrefixGroup> out;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < prods.size(); ++i) {
        if (seen.count(i)) continue;
        auto cls = first_symbol_class(prods, i);
        if (cls.size() < 2) continue;
        seen.insert(cls.begin(), cls.end());
        PrefixGroup grp;
        grp.lhs = g.production(i).lhs;
        grp.productions = cls;
        for (const std::string& n : longest_common_prefix(prods, cls)) grp.prefix.push_back(*g.find(n));
        out.push_back(std::move(grp));
    }
    return out;
}

// Termination: consider the potential P = sum over all unordered pairs of
// same-lhs productions of the length of the pair's common prefix. Rewriting a
// group of m >= 2 productions with group prefix |a| = p >= 1 removes the
// group's internal pairs (each contributing >= p, so at least C(m,2)*p >= 1
// in total), replaces them with the pairs of the residues (each shorter by
// exactly p), and creates no other sharing: the single replacement production
// starts with the group's first symbol which no remaining sibling shares, and
// the fresh nonterminal's residues inherit only the old pairs. So P strictly
// decreases with every rewrite and the loop reaches a fixpoint.
Grammar left_factor(const Grammar& g) {
    auto prods = to_name_prods(g);

    std::set<std::string> names;
    for (std::size_t i = 0; i < g.symbol_count(); ++i)
        names.insert(g.name(SymbolId{static_cast<std::uint32_t>(i)}));

    for (;;) {
        std::size_t target = prods.size();
        std::vector<std::size_t> cls;
        for (std::size_t i = 0; i < prods.size(); ++i) {
            cls = first_symbol_class(prods, i);
            if (cls.size() >= 2) {
                target = i;
                break;
            }
        }
        if (target == prods.size()) break;

        auto prefix = longest_common_prefix(prods, cls);
        const std::string lhs = prods[target].lhs;

        int k = 1;
        while (names.count(lhs + std::to_string(k))) ++k;
        const std::string fresh = lhs + std::to_string(k);
        names.insert(fresh);

        std::vector<NameProd> residues;
        for (std::size_t j : cls) {
            NameProd r{fresh, {prods[j].rhs.begin() + static_cast<std::ptrdiff_t>(prefix.size()),
                               prods[j].rhs.end()}};
            residues.push_back(std::move(r));
        }

        NameProd replacement{lhs, prefix};
        replacement.rhs.push_back(fresh);

        std::vector<NameProd> next;
        next.reserve(prods.size() - cls.size() + 1 + residues.size());
        for (std::size_t j = 0; j < prods.size(); ++j) {
            if (j == target) {
                next.push_back(replacement);
            } else if (!std::binary_search(cls.begin(), cls.end(), j)) {
                next.push_back(std::move(prods[j]));
            }
        }
        for (NameProd& r : residues) next.push_back(std::move(r));
        prods = std::move(next);
    }

    return from_name_prods(prods);
}

namespace {

// Tarjan's strongly connected components over the left-corner edge graph.
struct Scc {
    const std::vector<std::vector<std::uint32_t>>& adj;
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> components;
    int counter = 0;

    explicit Scc(const std::vector<std::vector<std::uint32_t>>& adj)
        : adj(adj), index(adj.size(), -1), low(adj.size(), 0), on_stack(adj.size(), false) {}

    void visit(std::uint32_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::uint32_t w : adj[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::uint32_t> comp;
            for (;;) {
                std::uint32_t w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
                if (w == v) break;
            }
            components.push_back(std::move(comp));
        }
    }
};

}  // namespace

std::vector<std::vector<SymbolId>> detect_left_recursion(const Grammar& g) {
    NullableSet nullable = compute_nullable(g);

    std::vector<std::vector<std::uint32_t>> adj(g.symbol_count());
    std::vector<std::set<std::uint32_t>> dedup(g.symbol_count());
    for (const Production& p : g.productions()) {
        for (SymbolId s : p.rhs) {
            if (g.is_terminal(s)) break;
            if (dedup[p.lhs.value].insert(s.value).second) adj[p.lhs.value].push_back(s.value);
            if (!nullable.contains(s)) break;
        }
    }

    Scc scc(adj);
    for (SymbolId nt : g.nonterminals())
        if (scc.index[nt.value] < 0) scc.visit(nt.value);

    std::vector<std::vector<SymbolId>> cycles;
    for (auto& comp : scc.components) {
        bool cyclic = comp.size() > 1;
        if (!cyclic)
            cyclic = dedup[comp.front()].count(comp.front()) > 0;  // self loop
        if (!cyclic) continue;
        std::sort(comp.begin(), comp.end());
        std::vector<SymbolId> cycle;
        for (std::uint32_t v : comp) cycle.push_back(SymbolId{v});
        cycles.push_back(std::move(cycle));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return cycles;
}

}  // namespace ll1
