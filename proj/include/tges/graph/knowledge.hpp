#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "tges/error.hpp"
#include "tges/graph/pdag.hpp"

namespace tges {

/// Tier assignment for every node. Tiers are numbered from 1; an edge A -> B is
/// forbidden exactly when tier(A) > tier(B). There are no required edges.
class TieredKnowledge {
public:
    TieredKnowledge() = default;

    explicit TieredKnowledge(std::vector<int> tiers) : tiers_(std::move(tiers)) {
        for (int t : tiers_) {
            if (t < 1) throw KnowledgeError("tier indices must be positive, got " + std::to_string(t));
        }
    }

    /// Every node in tier 1.
    static TieredKnowledge single_tier(std::size_t d) { return TieredKnowledge(std::vector<int>(d, 1)); }

    std::size_t size() const noexcept { return tiers_.size(); }
    int tier(Node v) const { return tiers_.at(v); }
    const std::vector<int>& tiers() const noexcept { return tiers_; }

    int num_tiers() const {
        return tiers_.empty() ? 0 : *std::max_element(tiers_.begin(), tiers_.end());
    }

    bool forbids(Node from, Node to) const { return tier(from) > tier(to); }
    bool same_tier(Node a, Node b) const { return tier(a) == tier(b); }

    friend bool operator==(const TieredKnowledge&, const TieredKnowledge&) = default;

private:
    std::vector<int> tiers_;
};

inline void check_compatible(const Pdag& g, const TieredKnowledge& k) {
    if (k.size() != g.size()) {
        throw KnowledgeError("knowledge covers " + std::to_string(k.size()) + " nodes, graph has " +
                             std::to_string(g.size()));
    }
}

}  // namespace tges
