#pragma once

#include "tges/graph/cpdag.hpp"
#include "tges/graph/extension.hpp"
#include "tges/graph/meek.hpp"

namespace tges {

/// Restrict a CPDAG (or MPDAG) by the tiers, then close under Meek rule 1.
inline Pdag close_under_tiers(const Pdag& g, const TieredKnowledge& k) {
    return meek_closure(restrict_to_knowledge(g, k), MeekRules::rule1());
}

/// Tiered MPDAG representing the restricted equivalence class of a DAG that encodes k.
inline Pdag tiered_mpdag_of(const Pdag& dag, const TieredKnowledge& k) {
    if (!encodes(dag, k)) throw KnowledgeError("tiered_mpdag_of: DAG contradicts the tiers");
    return close_under_tiers(dag_to_cpdag(dag), k);
}

}  // namespace tges
