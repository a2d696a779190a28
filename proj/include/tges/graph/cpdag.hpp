#pragma once

#include <algorithm>
#include <vector>

#include "tges/graph/properties.hpp"

namespace tges {

/// CPDAG of the Markov equivalence class of a DAG.
///
/// Compelled-edge labeling over a topological edge ordering: edges are ordered
/// by head (earliest head first) and, for equal heads, by tail from latest to
/// earliest; they are then labeled compelled or reversible in that order.
inline Pdag dag_to_cpdag(const Pdag& dag) {
    require_dag(dag, "dag_to_cpdag");
    const std::size_t d = dag.size();
    const std::vector<Node> order = *topological_order(dag);
    std::vector<std::size_t> position(d);
    for (std::size_t i = 0; i < d; ++i) position[order[i]] = i;

    struct Arc {
        Node from;
        Node to;
    };
    std::vector<Arc> arcs;
    for (Node y : order) {
        NodeSet pa = dag.parents(y);
        std::sort(pa.begin(), pa.end(), [&](Node a, Node b) { return position[a] > position[b]; });
        for (Node x : pa) arcs.push_back({x, y});
    }

    enum class Label { Unknown, Compelled, Reversible };
    std::vector<Label> label(d * d, Label::Unknown);
    auto at = [&](Node a, Node b) -> Label& { return label[a * d + b]; };
    auto label_into = [&](Node y, Label value, bool only_unknown) {
        for (Node p : dag.parents(y)) {
            if (!only_unknown || at(p, y) == Label::Unknown) at(p, y) = value;
        }
    };

    for (const Arc& arc : arcs) {
        const Node x = arc.from;
        const Node y = arc.to;
        if (at(x, y) != Label::Unknown) continue;

        bool done = false;
        for (Node w : dag.parents(x)) {
            if (at(w, x) != Label::Compelled) continue;
            if (!dag.has_directed(w, y)) {
                label_into(y, Label::Compelled, false);
                done = true;
                break;
            }
            at(w, y) = Label::Compelled;
        }
        if (done) continue;

        bool external_parent = false;
        for (Node z : dag.parents(y)) {
            if (z != x && !dag.has_directed(z, x)) {
                external_parent = true;
                break;
            }
        }
        at(x, y) = external_parent ? Label::Compelled : Label::Reversible;
        label_into(y, external_parent ? Label::Compelled : Label::Reversible, true);
    }

    Pdag cpdag = empty_like(dag);
    for (const Arc& arc : arcs) {
        if (at(arc.from, arc.to) == Label::Compelled) {
            cpdag.add_directed(arc.from, arc.to);
        } else {
            cpdag.add_undirected(arc.from, arc.to);
        }
    }
    return cpdag;
}

}  // namespace tges
