#pragma once

#include <memory>
#include <vector>

#include "tges/tges.hpp"

namespace tges::fixtures {

inline Pdag random_dag(std::size_t d, double p, Rng& rng) {
    std::vector<Node> order(d);
    for (Node i = 0; i < d; ++i) order[i] = i;
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_int<std::size_t>(0, i - 1)]);
    Pdag g(d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b) {
            if (rng.uniform01() < p) g.add_directed(order[a], order[b]);
        }
    }
    return g;
}

/// Random tiers consistent with the DAG: tiers are cut from a topological order.
inline TieredKnowledge random_tiers_for(const Pdag& dag, std::size_t tiers, Rng& rng) {
    const std::vector<Node> order = *topological_order(dag);
    std::vector<int> t(dag.size(), 1);
    int current = 1;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0 && current < static_cast<int>(tiers) && rng.uniform01() < 0.5) ++current;
        t[order[pos]] = current;
    }
    return TieredKnowledge(t);
}

/// Ground truth with a hand-chosen DAG; every edge gets `weight`.
inline GroundTruth make_truth(const Pdag& dag, const TieredKnowledge& k, double weight) {
    GroundTruth gt;
    gt.dag = dag;
    gt.dag.set_labels(default_labels(dag.size()));
    const auto d = static_cast<Eigen::Index>(dag.size());
    gt.weights = Eigen::MatrixXd::Zero(d, d);
    for (const Edge& e : dag.edges()) gt.weights(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) = weight;
    gt.knowledge = k;
    gt.target = tiered_mpdag_of(gt.dag, k);
    gt.order = *topological_order(dag);
    return gt;
}

inline std::shared_ptr<const Dataset> sample(const GroundTruth& gt, std::size_t n, std::uint64_t seed) {
    return std::make_shared<const Dataset>(sample_data(gt, n, seed));
}

inline Pdag undirected_skeleton_with_v_structures(const Pdag& dag) {
    Pdag g(dag.size());
    for (const Edge& e : dag.edges()) g.add_undirected(e.from, e.to);
    for (const auto& [a, c, b] : v_structures(dag)) {
        g.orient(a, c);
        g.orient(b, c);
    }
    return g;
}

/// Directed (x, y) pairs, x != y, in index order.
inline std::vector<std::pair<Node, Node>> ordered_pairs(std::size_t d) {
    std::vector<std::pair<Node, Node>> out;
    for (Node x = 0; x < d; ++x) {
        for (Node y = 0; y < d; ++y) {
            if (x != y) out.emplace_back(x, y);
        }
    }
    return out;
}

}  // namespace tges::fixtures
