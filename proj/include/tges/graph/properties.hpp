#pragma once

#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "tges/graph/knowledge.hpp"
#include "tges/graph/pdag.hpp"

namespace tges {

/// Topological order of the directed part of g (undirected edges ignored), or
/// nothing if the directed part has a cycle. Among ready nodes the smallest
/// index goes first.
inline std::optional<std::vector<Node>> topological_order(const Pdag& g) {
    const std::size_t d = g.size();
    std::vector<std::size_t> indegree(d, 0);
    for (Node j = 0; j < d; ++j) indegree[j] = g.parents(j).size();

    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node j = 0; j < d; ++j) {
        if (indegree[j] == 0) ready.push(j);
    }
    std::vector<Node> order;
    order.reserve(d);
    while (!ready.empty()) {
        const Node v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Node c : g.children(v)) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    if (order.size() != d) return std::nullopt;
    return order;
}

inline bool has_directed_cycle(const Pdag& g) { return !topological_order(g).has_value(); }

inline bool is_dag(const Pdag& g) { return g.num_undirected() == 0 && !has_directed_cycle(g); }

inline void require_dag(const Pdag& g, const char* what) {
    if (!is_dag(g)) throw GraphError(std::string(what) + ": input is not a DAG");
}

/// True iff there is a directed path from `from` to `to` of length >= 1.
inline bool has_directed_path(const Pdag& g, Node from, Node to) {
    std::vector<bool> seen(g.size(), false);
    std::vector<Node> stack{from};
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node c : g.children(v)) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return false;
}

/// True iff no directed edge of g is forbidden by k. For a DAG this is "g encodes k".
inline bool agrees_with_directed(const Pdag& g, const TieredKnowledge& k) {
    check_compatible(g, k);
    for (const Edge& e : g.edges()) {
        if (e.directed && k.forbids(e.from, e.to)) return false;
    }
    return true;
}

inline bool encodes(const Pdag& dag, const TieredKnowledge& k) {
    require_dag(dag, "encodes");
    return agrees_with_directed(dag, k);
}

/// Unshielded colliders a -> c <- b with a < b, stored as (a, c, b).
using VStructure = std::tuple<Node, Node, Node>;

inline std::set<VStructure> v_structures(const Pdag& g) {
    std::set<VStructure> out;
    for (Node c = 0; c < g.size(); ++c) {
        const NodeSet pa = g.parents(c);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = i + 1; j < pa.size(); ++j) {
                if (!g.adjacent(pa[i], pa[j])) out.emplace(pa[i], c, pa[j]);
            }
        }
    }
    return out;
}

inline bool same_skeleton(const Pdag& a, const Pdag& b) {
    if (a.size() != b.size()) return false;
    for (Node i = 0; i < a.size(); ++i) {
        for (Node j = i + 1; j < a.size(); ++j) {
            if (a.adjacent(i, j) != b.adjacent(i, j)) return false;
        }
    }
    return true;
}

/// Skeleton and v-structure test; for DAGs this is Markov equivalence.
inline bool markov_equivalent(const Pdag& a, const Pdag& b) {
    return same_skeleton(a, b) && v_structures(a) == v_structures(b);
}

/// Ancestors of `seeds` in the directed part of g, seeds included.
inline std::vector<bool> ancestral_closure(const Pdag& g, const NodeSet& seeds) {
    std::vector<bool> in(g.size(), false);
    std::vector<Node> stack(seeds.begin(), seeds.end());
    for (Node s : seeds) in[s] = true;
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node p : g.parents(v)) {
            if (!in[p]) {
                in[p] = true;
                stack.push_back(p);
            }
        }
    }
    return in;
}

/// d-separation of x and y given z in a DAG, via the moralized ancestral graph.
inline bool d_separated(const Pdag& g, Node x, Node y, const NodeSet& z) {
    require_dag(g, "d_separated");
    if (x == y) throw GraphError("d_separated: x and y must differ");
    if (contains(z, x) || contains(z, y)) {
        throw GraphError("d_separated: conditioning set contains an endpoint");
    }
    const std::size_t d = g.size();
    const std::vector<bool> keep = ancestral_closure(g, set_union(set_union(NodeSet{x}, NodeSet{y}), z));

    std::vector<std::vector<bool>> moral(d, std::vector<bool>(d, false));
    for (Node v = 0; v < d; ++v) {
        if (!keep[v]) continue;
        const NodeSet pa = g.parents(v);
        for (Node p : pa) moral[p][v] = moral[v][p] = true;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = i + 1; j < pa.size(); ++j) moral[pa[i]][pa[j]] = moral[pa[j]][pa[i]] = true;
        }
    }

    std::vector<bool> seen(d, false);
    std::vector<Node> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node w = 0; w < d; ++w) {
            if (!moral[v][w] || seen[w] || !keep[w] || contains(z, w)) continue;
            if (w == y) return false;
            seen[w] = true;
            stack.push_back(w);
        }
    }
    return true;
}

}  // namespace tges
