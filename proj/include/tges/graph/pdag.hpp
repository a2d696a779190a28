#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tges/error.hpp"

namespace tges {

using Node = std::size_t;

/// Sorted, duplicate-free list of nodes. Used for parent sets and conditioning sets.
using NodeSet = std::vector<Node>;

/// Mark of the (row, col) cell in the adjacency-matrix serialization.
enum class EdgeMark : std::uint8_t { None = 0, Directed = 1, Undirected = 2 };

struct Edge {
    Node from;
    Node to;
    bool directed;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Mixed graph over nodes 0..d-1 holding directed and undirected edges.
///
/// DAGs, CPDAGs, PDAGs and tiered MPDAGs all share this representation; which
/// one a value is depends only on its edges. Storage is a dense d x d cell
/// matrix, where cell (i,j) records how the edge between i and j looks from i.
class Pdag {
public:
    Pdag() = default;

    explicit Pdag(std::size_t d) : d_(d), cells_(d * d, Cell::None) {}

    Pdag(std::size_t d, std::vector<std::string> labels) : Pdag(d) {
        if (labels.size() != d) {
            throw GraphError("label count " + std::to_string(labels.size()) +
                             " does not match node count " + std::to_string(d));
        }
        labels_ = std::move(labels);
    }

    std::size_t size() const noexcept { return d_; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && labels.size() != d_) {
            throw GraphError("label count does not match node count");
        }
        labels_ = std::move(labels);
    }
    std::string label(Node i) const {
        return labels_.empty() ? "X" + std::to_string(i + 1) : labels_[i];
    }

    bool adjacent(Node i, Node j) const { return cell(i, j) != Cell::None; }
    bool has_directed(Node i, Node j) const { return cell(i, j) == Cell::Out; }
    bool has_undirected(Node i, Node j) const { return cell(i, j) == Cell::Undirected; }

    /// Serialization mark of cell (i, j): Directed means i -> j.
    EdgeMark mark(Node i, Node j) const {
        switch (cell(i, j)) {
            case Cell::Out:
                return EdgeMark::Directed;
            case Cell::Undirected:
                return EdgeMark::Undirected;
            default:
                return EdgeMark::None;
        }
    }

    void add_directed(Node i, Node j) {
        check_pair(i, j);
        set(i, j, Cell::Out);
        set(j, i, Cell::In);
    }

    void add_undirected(Node i, Node j) {
        check_pair(i, j);
        set(i, j, Cell::Undirected);
        set(j, i, Cell::Undirected);
    }

    void remove_edge(Node i, Node j) {
        check_pair(i, j);
        set(i, j, Cell::None);
        set(j, i, Cell::None);
    }

    /// Replaces the edge between i and j, whatever it is, by i -> j.
    void orient(Node i, Node j) {
        if (!adjacent(i, j)) {
            throw GraphError("cannot orient missing edge " + label(i) + " - " + label(j));
        }
        add_directed(i, j);
    }

    NodeSet parents(Node j) const { return collect(j, Cell::In); }
    NodeSet children(Node i) const { return collect(i, Cell::Out); }
    /// Undirected neighbours.
    NodeSet neighbors(Node i) const { return collect(i, Cell::Undirected); }
    NodeSet adjacents(Node i) const {
        NodeSet out;
        for (Node j = 0; j < d_; ++j) {
            if (cell(i, j) != Cell::None) out.push_back(j);
        }
        return out;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Node i = 0; i < d_; ++i) {
            for (Node j = 0; j < d_; ++j) {
                const Cell c = cell(i, j);
                if (c == Cell::Out) out.push_back({i, j, true});
                if (c == Cell::Undirected && i < j) out.push_back({i, j, false});
            }
        }
        return out;
    }

    std::size_t num_edges() const {
        std::size_t count = 0;
        for (Node i = 0; i < d_; ++i) {
            for (Node j = i + 1; j < d_; ++j) count += adjacent(i, j) ? 1 : 0;
        }
        return count;
    }

    std::size_t num_undirected() const {
        std::size_t count = 0;
        for (Node i = 0; i < d_; ++i) {
            for (Node j = i + 1; j < d_; ++j) count += has_undirected(i, j) ? 1 : 0;
        }
        return count;
    }

    /// Same edges; labels are not compared.
    friend bool operator==(const Pdag& a, const Pdag& b) {
        return a.d_ == b.d_ && a.cells_ == b.cells_;
    }

    /// Strict weak order on edge content, for using graphs as map keys.
    friend bool operator<(const Pdag& a, const Pdag& b) {
        if (a.d_ != b.d_) return a.d_ < b.d_;
        return a.cells_ < b.cells_;
    }

private:
    enum class Cell : std::uint8_t { None, Out, In, Undirected };

    Cell cell(Node i, Node j) const { return cells_[i * d_ + j]; }
    void set(Node i, Node j, Cell c) { cells_[i * d_ + j] = c; }

    void check_pair(Node i, Node j) const {
        if (i >= d_ || j >= d_) {
            throw GraphError("node index out of range (d = " + std::to_string(d_) + ")");
        }
        if (i == j) throw GraphError("self-loop on " + label(i));
    }

    NodeSet collect(Node i, Cell wanted) const {
        NodeSet out;
        for (Node j = 0; j < d_; ++j) {
            if (cell(i, j) == wanted) out.push_back(j);
        }
        return out;
    }

    std::size_t d_ = 0;
    std::vector<Cell> cells_;
    std::vector<std::string> labels_;
};

/// Edgeless graph on the same nodes (and labels) as g.
inline Pdag empty_like(const Pdag& g) {
    Pdag out(g.size());
    out.set_labels(g.labels());
    return out;
}

/// Graph with d nodes and the given directed edges.
inline Pdag make_dag(std::size_t d, std::initializer_list<std::pair<Node, Node>> arcs) {
    Pdag g(d);
    for (auto [a, b] : arcs) g.add_directed(a, b);
    return g;
}

inline bool contains(const NodeSet& s, Node v) { return std::binary_search(s.begin(), s.end(), v); }

inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline NodeSet with(NodeSet s, Node v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
    return s;
}

inline NodeSet without(NodeSet s, Node v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
    return s;
}

}  // namespace tges
