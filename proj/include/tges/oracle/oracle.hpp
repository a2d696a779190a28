#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tges/graph/properties.hpp"
#include "tges/scoring/gaussian_bic.hpp"

namespace tges {

inline constexpr std::size_t kMaxEnumerationNodes = 5;

/// Every labeled DAG on d nodes exactly once.
///
/// Unordered pairs are visited in lexicographic order, each taking one of
/// {none, i -> j, j -> i}, counted as a base-3 odometer with the last pair
/// fastest; cyclic assignments are skipped.
inline std::vector<Pdag> enumerate_dags(std::size_t d) {
    if (d > kMaxEnumerationNodes) {
        throw Error("enumerate_dags: d = " + std::to_string(d) + " exceeds the limit of " +
                    std::to_string(kMaxEnumerationNodes));
    }
    std::vector<std::pair<Node, Node>> pairs;
    for (Node i = 0; i < d; ++i) {
        for (Node j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    }
    std::vector<int> state(pairs.size(), 0);
    std::vector<Pdag> out;
    while (true) {
        Pdag g(d);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (state[p] == 1) g.add_directed(pairs[p].first, pairs[p].second);
            if (state[p] == 2) g.add_directed(pairs[p].second, pairs[p].first);
        }
        if (!has_directed_cycle(g)) out.push_back(std::move(g));
        std::size_t p = pairs.size();
        while (p > 0 && state[p - 1] == 2) state[--p] = 0;
        if (p == 0) break;
        ++state[p - 1];
    }
    return out;
}

/// All DAGs on scorer.num_variables() nodes whose total score is maximal, up
/// to a relative tolerance. Uses TBIC when the scorer carries knowledge.
inline std::vector<Pdag> best_scoring_graphs(const GaussianScorer& scorer, double rel_tol = 1e-9) {
    const std::vector<Pdag> dags = enumerate_dags(scorer.num_variables());
    std::vector<Score> scores;
    scores.reserve(dags.size());
    std::optional<double> best;
    for (const Pdag& g : dags) {
        scores.push_back(scorer.total_score(g));
        if (scores.back().is_finite() && (!best || scores.back().value() > *best)) best = scores.back().value();
    }
    std::vector<Pdag> out;
    if (!best) return out;
    const double tol = rel_tol * std::max(1.0, std::abs(*best));
    for (std::size_t i = 0; i < dags.size(); ++i) {
        if (scores[i].is_finite() && *best - scores[i].value() <= tol) out.push_back(dags[i]);
    }
    return out;
}

/// Members of the Markov equivalence class of `dag` that encode k.
inline std::vector<Pdag> restricted_class_of(const Pdag& dag, const TieredKnowledge& k) {
    require_dag(dag, "restricted_class_of");
    check_compatible(dag, k);
    if (!encodes(dag, k)) throw KnowledgeError("restricted_class_of: DAG does not encode the tiers");
    std::vector<Pdag> out;
    for (Pdag& g : enumerate_dags(dag.size())) {
        if (markov_equivalent(g, dag) && encodes(g, k)) out.push_back(std::move(g));
    }
    return out;
}

/// Full Markov equivalence class of `dag`.
inline std::vector<Pdag> markov_class_of(const Pdag& dag) {
    require_dag(dag, "markov_class_of");
    std::vector<Pdag> out;
    for (Pdag& g : enumerate_dags(dag.size())) {
        if (markov_equivalent(g, dag)) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace tges
