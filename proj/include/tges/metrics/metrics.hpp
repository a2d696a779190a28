#pragma once

#include <optional>

#include "tges/graph/knowledge.hpp"
#include "tges/graph/pdag.hpp"

namespace tges {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    /// Absent when nothing was predicted positive.
    std::optional<double> precision() const {
        if (tp + fp == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    /// Absent when there are no true positives to find.
    std::optional<double> recall() const {
        if (tp + fn == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fn);
    }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

namespace detail {
inline void check_same_size(const Pdag& a, const Pdag& b) {
    if (a.size() != b.size()) {
        throw GraphError("graphs have different node counts (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
}
}  // namespace detail

/// Structural Hamming distance divided by d(d-1)/2. Every node pair whose
/// marks differ counts once: additions, removals and any orientation change,
/// directed <-> undirected included.
inline double sshd(const Pdag& est, const Pdag& truth) {
    detail::check_same_size(est, truth);
    const std::size_t d = est.size();
    if (d < 2) return 0.0;
    std::size_t diff = 0;
    for (Node i = 0; i < d; ++i) {
        for (Node j = i + 1; j < d; ++j) {
            if (est.mark(i, j) != truth.mark(i, j) || est.mark(j, i) != truth.mark(j, i)) ++diff;
        }
    }
    return static_cast<double>(diff) / (static_cast<double>(d * (d - 1)) / 2.0);
}

/// Adjacency confusion over all unordered pairs; edge marks are ignored.
inline ConfusionMatrix adjacency_confusion(const Pdag& est, const Pdag& truth) {
    detail::check_same_size(est, truth);
    ConfusionMatrix m;
    for (Node i = 0; i < est.size(); ++i) {
        for (Node j = i + 1; j < est.size(); ++j) {
            const bool e = est.adjacent(i, j);
            const bool t = truth.adjacent(i, j);
            if (e && t) ++m.tp;
            if (!e && t) ++m.fn;
            if (e && !t) ++m.fp;
            if (!e && !t) ++m.tn;
        }
    }
    return m;
}

struct DirectionConfusion {
    ConfusionMatrix counts;
    /// Pairs skipped because the graphs disagree on adjacency or both lack one.
    std::size_t not_scored = 0;
};

/// Orientation confusion over pairs adjacent in both graphs.
///
/// undirected/undirected is TN, undirected/directed FN, directed/undirected FP,
/// same direction TP, and opposite directions count as both FP and FN. With
/// `in_tier_only`, pairs in different tiers are ignored entirely.
inline DirectionConfusion direction_confusion(const Pdag& est, const Pdag& truth, bool in_tier_only,
                                              const std::optional<TieredKnowledge>& k) {
    detail::check_same_size(est, truth);
    if (in_tier_only && !k) throw KnowledgeError("in-tier direction metric needs a tier assignment");
    if (k) check_compatible(truth, *k);
    DirectionConfusion out;
    for (Node i = 0; i < est.size(); ++i) {
        for (Node j = i + 1; j < est.size(); ++j) {
            if (in_tier_only && !k->same_tier(i, j)) continue;
            if (!est.adjacent(i, j) || !truth.adjacent(i, j)) {
                ++out.not_scored;
                continue;
            }
            const bool est_dir = !est.has_undirected(i, j);
            const bool truth_dir = !truth.has_undirected(i, j);
            ConfusionMatrix& m = out.counts;
            if (!est_dir && !truth_dir) {
                ++m.tn;
            } else if (!est_dir) {
                ++m.fn;
            } else if (!truth_dir) {
                ++m.fp;
            } else if (est.has_directed(i, j) == truth.has_directed(i, j)) {
                ++m.tp;
            } else {
                ++m.fp;
                ++m.fn;
            }
        }
    }
    return out;
}

struct EvalReport {
    double sshd = 0.0;
    ConfusionMatrix adjacency;
    ConfusionMatrix all_direction;
    ConfusionMatrix in_tier_direction;
    std::size_t all_direction_not_scored = 0;
    std::size_t in_tier_direction_not_scored = 0;
};

inline EvalReport evaluate(const Pdag& est, const Pdag& truth, const TieredKnowledge& k) {
    EvalReport r;
    r.sshd = sshd(est, truth);
    r.adjacency = adjacency_confusion(est, truth);
    const DirectionConfusion all = direction_confusion(est, truth, false, k);
    const DirectionConfusion in_tier = direction_confusion(est, truth, true, k);
    r.all_direction = all.counts;
    r.all_direction_not_scored = all.not_scored;
    r.in_tier_direction = in_tier.counts;
    r.in_tier_direction_not_scored = in_tier.not_scored;
    return r;
}

}  // namespace tges
