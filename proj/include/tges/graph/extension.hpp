#pragma once

#include <optional>
#include <vector>

#include "tges/graph/knowledge.hpp"
#include "tges/graph/properties.hpp"

namespace tges {

/// Orients undirected edges of g so that no edge is directed against k.
/// Undirected cross-tier edges point from the earlier to the later tier;
/// in-tier and already-directed edges are left alone.
inline Pdag restrict_to_knowledge(Pdag g, const TieredKnowledge& k) {
    check_compatible(g, k);
    if (!agrees_with_directed(g, k)) {
        throw KnowledgeError("restrict: graph has a directed edge contradicting the tiers");
    }
    for (Node a = 0; a < g.size(); ++a) {
        for (Node b = 0; b < g.size(); ++b) {
            if (g.has_undirected(a, b) && k.tier(a) < k.tier(b)) g.orient(a, b);
        }
    }
    return g;
}

/// Deletes every directed edge A -> B with tier(A) > tier(B).
inline Pdag remove_contradicting(Pdag g, const TieredKnowledge& k) {
    check_compatible(g, k);
    for (const Edge& e : g.edges()) {
        if (e.directed && k.forbids(e.from, e.to)) g.remove_edge(e.from, e.to);
    }
    return g;
}

namespace detail {

/// Dor-Tarsi extension. Repeatedly removes a sink whose undirected neighbours
/// are adjacent to all its other adjacents, orienting those undirected edges
/// into it. The highest-index eligible node is taken first, so remaining
/// freedom resolves towards low -> high orientations.
inline std::optional<Pdag> dor_tarsi(const Pdag& g) {
    const std::size_t d = g.size();
    Pdag work = g;
    Pdag out = g;
    std::vector<bool> removed(d, false);

    for (std::size_t round = 0; round < d; ++round) {
        std::optional<Node> pick;
        for (Node x = d; x-- > 0;) {
            if (removed[x] || !work.children(x).empty()) continue;
            const NodeSet adj = work.adjacents(x);
            bool ok = true;
            for (Node y : work.neighbors(x)) {
                for (Node z : adj) {
                    if (z != y && !work.adjacent(y, z)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) {
                pick = x;
                break;
            }
        }
        if (!pick) return std::nullopt;
        const Node x = *pick;
        for (Node y : work.neighbors(x)) out.orient(y, x);
        for (Node y : work.adjacents(x)) work.remove_edge(x, y);
        removed[x] = true;
    }
    return out;
}

}  // namespace detail

/// A DAG with the skeleton and v-structures of g that keeps g's directed edges.
///
/// With knowledge, the DAG also encodes k. The result is deterministic. Throws
/// ExtensionError when no (k-encoding) extension exists.
inline Pdag consistent_extension(const Pdag& g, const std::optional<TieredKnowledge>& k = std::nullopt) {
    std::optional<Pdag> ext = detail::dor_tarsi(g);
    if (!ext) {
        throw ExtensionError(ExtensionError::Kind::NoConsistentExtension, "no consistent extension");
    }
    if (!k) return *ext;

    check_compatible(g, *k);
    const auto fail = [] {
        return ExtensionError(ExtensionError::Kind::NoKnowledgeEncodingExtension, "no k-encoding extension");
    };
    if (!agrees_with_directed(g, *k)) throw fail();
    if (agrees_with_directed(*ext, *k)) return *ext;

    // Any k-encoding extension of g also extends the restricted graph, so it is
    // enough to extend that one and reject it if restriction added a collider.
    std::optional<Pdag> restricted_ext = detail::dor_tarsi(restrict_to_knowledge(g, *k));
    if (!restricted_ext || v_structures(*restricted_ext) != v_structures(g)) throw fail();
    return *restricted_ext;
}

/// True iff g represents at least one DAG that encodes k.
inline bool in_agreement(const Pdag& g, const TieredKnowledge& k) {
    try {
        consistent_extension(g, k);
        return true;
    } catch (const ExtensionError&) {
        return false;
    }
}

}  // namespace tges
