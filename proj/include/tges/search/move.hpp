#pragma once

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "tges/graph/pdag.hpp"
#include "tges/scoring/score.hpp"

namespace tges {

enum class MoveKind { Insert = 0, Delete = 1, Reverse = 2 };

inline const char* to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::Insert:
            return "insert";
        case MoveKind::Delete:
            return "delete";
        default:
            return "reverse";
    }
}

/// One candidate operation on an equivalence-class state.
///
///  - Insert:  add from -> to; `subset` holds the undirected neighbours of `to`
///             that become its parents alongside `from` (Chickering's T).
///  - Delete:  remove the edge between from and to, `to` being the head;
///             `subset` holds the neighbours that become children (H).
///  - Reverse: turn the directed edge from -> to into to -> from.
struct Move {
    MoveKind kind = MoveKind::Insert;
    Node from = 0;
    Node to = 0;
    NodeSet subset;
    double delta = 0.0;

    auto key() const { return std::tie(kind, from, to, subset); }
};

/// Best-first order: larger delta, then lexicographic (kind, from, to, subset).
inline bool better_move(const Move& a, const Move& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    return a.key() < b.key();
}

struct TraceEntry {
    std::size_t step = 0;
    MoveKind kind = MoveKind::Insert;
    Node from = 0;
    Node to = 0;
    double delta = 0.0;
    double score = 0.0;
};

}  // namespace tges
