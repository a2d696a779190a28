#pragma once

#include <bitset>
#include <initializer_list>

#include "tges/graph/pdag.hpp"

namespace tges {

/// Subset of Meek's orientation rules 1-4.
class MeekRules {
public:
    MeekRules() = default;
    MeekRules(std::initializer_list<int> rules) {
        for (int r : rules) {
            if (r < 1 || r > 4) throw GraphError("Meek rule index must be in 1..4");
            bits_.set(static_cast<std::size_t>(r - 1));
        }
    }

    static MeekRules all() { return {1, 2, 3, 4}; }
    static MeekRules rule1() { return {1}; }

    bool has(int rule) const { return bits_.test(static_cast<std::size_t>(rule - 1)); }

private:
    std::bitset<4> bits_;
};

namespace detail {

// c -> a, c not adjacent to b.
inline bool meek_rule1(const Pdag& g, Node a, Node b) {
    for (Node c : g.parents(a)) {
        if (c != b && !g.adjacent(c, b)) return true;
    }
    return false;
}

// a -> c -> b.
inline bool meek_rule2(const Pdag& g, Node a, Node b) {
    for (Node c : g.children(a)) {
        if (g.has_directed(c, b)) return true;
    }
    return false;
}

// a - c -> b and a - e -> b with c, e non-adjacent.
inline bool meek_rule3(const Pdag& g, Node a, Node b) {
    const NodeSet ne = g.neighbors(a);
    for (std::size_t i = 0; i < ne.size(); ++i) {
        if (ne[i] == b || !g.has_directed(ne[i], b)) continue;
        for (std::size_t j = i + 1; j < ne.size(); ++j) {
            if (ne[j] == b || !g.has_directed(ne[j], b)) continue;
            if (!g.adjacent(ne[i], ne[j])) return true;
        }
    }
    return false;
}

// a - c, c -> e -> b, c not adjacent to b, e adjacent to a.
inline bool meek_rule4(const Pdag& g, Node a, Node b) {
    for (Node c : g.neighbors(a)) {
        if (c == b || g.adjacent(c, b)) continue;
        for (Node e : g.children(c)) {
            if (e != a && g.has_directed(e, b) && g.adjacent(e, a)) return true;
        }
    }
    return false;
}

inline bool meek_fires(const Pdag& g, int rule, Node a, Node b) {
    switch (rule) {
        case 1:
            return meek_rule1(g, a, b);
        case 2:
            return meek_rule2(g, a, b);
        case 3:
            return meek_rule3(g, a, b);
        default:
            return meek_rule4(g, a, b);
    }
}

}  // namespace detail

/// Orients undirected edges of g with the selected Meek rules until none fires.
///
/// Rules are tried in ascending order; after any orientation the scan restarts
/// at rule 1. Only undirected edges change; adjacencies are untouched.
inline Pdag meek_closure(Pdag g, MeekRules rules) {
    const std::size_t d = g.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int rule = 1; rule <= 4 && !changed; ++rule) {
            if (!rules.has(rule)) continue;
            for (Node i = 0; i < d && !changed; ++i) {
                for (Node j = i + 1; j < d && !changed; ++j) {
                    if (!g.has_undirected(i, j)) continue;
                    if (detail::meek_fires(g, rule, i, j)) {
                        g.orient(i, j);
                        changed = true;
                    } else if (detail::meek_fires(g, rule, j, i)) {
                        g.orient(j, i);
                        changed = true;
                    }
                }
            }
        }
    }
    return g;
}

}  // namespace tges
