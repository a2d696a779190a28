#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "tges/graph/mpdag.hpp"
#include "tges/log.hpp"
#include "tges/scoring/gaussian_bic.hpp"
#include "tges/search/move.hpp"

namespace tges {

/// Which family of equivalence-class states a search walks through.
enum class ClassKind {
    Cpdag,        // plain GES: Markov equivalence classes
    TieredMpdag,  // TGES: restricted equivalence classes
};

struct SearchOptions {
    /// A move is applied only if it raises the score by more than this.
    double min_improvement = 1e-10;
    /// Cap on forward/backward/turning cycles in TGES.
    std::size_t max_cycles = 100;
    bool record_trace = true;
};

struct SearchStats {
    double stage_one_seconds = 0.0;  // scoring neighbours
    double total_seconds = 0.0;
    std::size_t steps = 0;
    std::size_t cycles = 0;
    bool hit_cycle_cap = false;
};

struct SearchState {
    Pdag graph;
    Score score;
    std::vector<TraceEntry> trace;
};

struct SearchResult {
    Pdag graph;
    Score score;
    std::vector<TraceEntry> trace;
    SearchStats stats;
};

/// Greedy search over CPDAGs or tiered MPDAGs with a decomposable score.
///
/// Insert and Delete candidates use Chickering's class-level operators on the
/// current state, so every DAG of the class is a potential representative.
/// Reverse candidates are single-edge reversals of the state's directed edges
/// on its canonical consistent extension. After a move the new DAG is mapped
/// to its CPDAG and, for tiered states, restricted and closed under Meek rule 1.
class GreedySearch {
public:
    GreedySearch(const GaussianScorer& scorer, ClassKind kind, SearchOptions options = {})
        : scorer_(scorer), kind_(kind), options_(options) {
        if (kind_ == ClassKind::TieredMpdag && !scorer_.knowledge()) {
            throw KnowledgeError("tiered search needs a scorer with a tier assignment");
        }
    }

    ClassKind kind() const noexcept { return kind_; }
    const SearchStats& stats() const noexcept { return stats_; }

    SearchState initial_state() const {
        Pdag empty(scorer_.num_variables());
        empty.set_labels(scorer_.data().labels());
        return {empty, scorer_.total_score(empty), {}};
    }

    /// Scored candidates of one kind, one per (kind, from, to) with its best subset.
    std::vector<Move> neighbors(const SearchState& state, MoveKind kind) const {
        switch (kind) {
            case MoveKind::Insert:
                return insert_candidates(state.graph);
            case MoveKind::Delete:
                return delete_candidates(state.graph);
            default:
                return reverse_candidates(state.graph);
        }
    }

    /// Applies the best improving move of the given kind; nothing if none improves.
    std::optional<SearchState> step(const SearchState& state, MoveKind kind) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Move> moves = neighbors(state, kind);
        stats_.stage_one_seconds += seconds_since(t0);

        std::erase_if(moves, [&](const Move& m) { return !(m.delta > options_.min_improvement); });
        std::sort(moves.begin(), moves.end(), better_move);
        for (const Move& move : moves) {
            std::optional<Pdag> dag = resulting_dag(state.graph, move);
            if (!dag) continue;
            Pdag next = to_state_graph(*dag);
            if (next == state.graph) continue;
            const Score next_score = scorer_.score_class(next);
            if (!(score_delta(next_score, state.score) > options_.min_improvement)) continue;

            SearchState out{std::move(next), next_score, state.trace};
            ++stats_.steps;
            if (options_.record_trace) {
                out.trace.push_back({stats_.steps, move.kind, move.from, move.to, move.delta, next_score.value()});
            }
            return out;
        }
        return std::nullopt;
    }

    std::optional<SearchState> forward_step(const SearchState& s) { return step(s, MoveKind::Insert); }
    std::optional<SearchState> backward_step(const SearchState& s) { return step(s, MoveKind::Delete); }
    std::optional<SearchState> turning_step(const SearchState& s) { return step(s, MoveKind::Reverse); }

    /// Repeats steps of one kind until none improves. Returns whether anything changed.
    bool run_phase(SearchState& state, MoveKind kind) {
        bool changed = false;
        while (auto next = step(state, kind)) {
            state = std::move(*next);
            changed = true;
        }
        return changed;
    }

    /// Maps a DAG to the state representation of its class.
    Pdag to_state_graph(const Pdag& dag) const {
        Pdag cpdag = dag_to_cpdag(dag);
        if (kind_ == ClassKind::TieredMpdag) return close_under_tiers(cpdag, *scorer_.knowledge());
        return cpdag;
    }

    /// DAG obtained by applying a move to a member of the class, or nothing if
    /// the move turns out not to be applicable.
    std::optional<Pdag> resulting_dag(const Pdag& g, const Move& move) const {
        try {
            switch (move.kind) {
                case MoveKind::Insert:
                    return apply_insert(g, move);
                case MoveKind::Delete:
                    return apply_delete(g, move);
                default:
                    return apply_reverse(g, move);
            }
        } catch (const ExtensionError&) {
            return std::nullopt;
        }
    }

private:
    static double seconds_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    const std::optional<TieredKnowledge>& knowledge() const { return scorer_.knowledge(); }

    static bool is_clique(const Pdag& g, const NodeSet& nodes) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                if (!g.adjacent(nodes[i], nodes[j])) return false;
            }
        }
        return true;
    }

    /// True iff every semi-directed path from `from` to `target` meets `blocked`.
    static bool semi_directed_paths_blocked(const Pdag& g, Node from, Node target, const NodeSet& blocked) {
        std::vector<bool> seen(g.size(), false);
        std::vector<Node> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            const Node v = stack.back();
            stack.pop_back();
            for (Node w = 0; w < g.size(); ++w) {
                if (seen[w] || !(g.has_directed(v, w) || g.has_undirected(v, w))) continue;
                if (w == target) return false;
                if (contains(blocked, w)) continue;
                seen[w] = true;
                stack.push_back(w);
            }
        }
        return true;
    }

    /// Calls fn(T) for every T drawn from `pool` with base U T a clique, in
    /// lexicographic order of T.
    static void for_each_clique_extension(const Pdag& g, const NodeSet& base, const NodeSet& pool,
                                          const std::function<void(const NodeSet&)>& fn) {
        NodeSet chosen;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            fn(chosen);
            for (std::size_t i = start; i < pool.size(); ++i) {
                const Node t = pool[i];
                bool ok = true;
                for (Node b : base) ok = ok && g.adjacent(t, b);
                for (Node c : chosen) ok = ok && g.adjacent(t, c);
                if (!ok) continue;
                chosen.push_back(t);
                rec(i + 1);
                chosen.pop_back();
            }
        };
        rec(0);
    }

    std::vector<Move> insert_candidates(const Pdag& g) const {
        std::vector<Move> out;
        const std::size_t d = g.size();
        for (Node y = 0; y < d; ++y) {
            const NodeSet ne_y = g.neighbors(y);
            const NodeSet pa_y = g.parents(y);
            for (Node x = 0; x < d; ++x) {
                if (x == y || g.adjacent(x, y)) continue;
                if (knowledge() && knowledge()->forbids(x, y)) {
                    out.push_back({MoveKind::Insert, x, y, {}, -std::numeric_limits<double>::infinity()});
                    continue;
                }
                NodeSet na, pool;
                for (Node v : ne_y) (g.adjacent(v, x) ? na : pool).push_back(v);
                if (!is_clique(g, na)) continue;

                std::optional<Move> best;
                for_each_clique_extension(g, na, pool, [&](const NodeSet& t) {
                    const NodeSet na_t = set_union(na, t);
                    if (!semi_directed_paths_blocked(g, y, x, na_t)) return;
                    const NodeSet base = set_union(pa_y, na_t);
                    const double delta = score_delta(scorer_.local(y, with(base, x)), scorer_.local(y, base));
                    Move m{MoveKind::Insert, x, y, t, delta};
                    if (!best || better_move(m, *best)) best = std::move(m);
                });
                if (best) out.push_back(std::move(*best));
            }
        }
        return out;
    }

    std::vector<Move> delete_candidates(const Pdag& g) const {
        std::vector<Move> out;
        const std::size_t d = g.size();
        for (Node y = 0; y < d; ++y) {
            const NodeSet ne_y = g.neighbors(y);
            const NodeSet pa_y = g.parents(y);
            for (Node x = 0; x < d; ++x) {
                if (!(g.has_directed(x, y) || g.has_undirected(x, y))) continue;
                NodeSet na;
                for (Node v : ne_y) {
                    if (v != x && g.adjacent(v, x)) na.push_back(v);
                }
                std::optional<Move> best;
                const std::size_t subsets = std::size_t{1} << na.size();
                for (std::size_t mask = 0; mask < subsets; ++mask) {
                    NodeSet h, keep;
                    for (std::size_t b = 0; b < na.size(); ++b) ((mask >> b) & 1 ? h : keep).push_back(na[b]);
                    if (!is_clique(g, keep)) continue;
                    const NodeSet base = without(set_union(pa_y, keep), x);
                    const double delta = score_delta(scorer_.local(y, base), scorer_.local(y, with(base, x)));
                    Move m{MoveKind::Delete, x, y, h, delta};
                    if (!best || better_move(m, *best)) best = std::move(m);
                }
                if (best) out.push_back(std::move(*best));
            }
        }
        return out;
    }

    std::vector<Move> reverse_candidates(const Pdag& g) const {
        std::vector<Move> out;
        const Pdag ext = consistent_extension(g, knowledge());
        for (const Edge& e : g.edges()) {
            if (!e.directed) continue;
            const Node x = e.from;
            const Node y = e.to;
            Pdag without_edge = ext;
            without_edge.remove_edge(x, y);
            if (has_directed_path(without_edge, x, y)) continue;
            const NodeSet pa_x = ext.parents(x);
            const NodeSet pa_y = ext.parents(y);
            const double gain_x = score_delta(scorer_.local(x, with(pa_x, y)), scorer_.local(x, pa_x));
            const double gain_y = score_delta(scorer_.local(y, without(pa_y, x)), scorer_.local(y, pa_y));
            out.push_back({MoveKind::Reverse, x, y, {}, gain_x + gain_y});
        }
        return out;
    }

    Pdag apply_insert(const Pdag& g, const Move& m) const {
        Pdag next = g;
        next.add_directed(m.from, m.to);
        for (Node v : g.neighbors(m.to)) {
            if (g.adjacent(v, m.from) || contains(m.subset, v)) next.orient(v, m.to);
        }
        return consistent_extension(next, knowledge());
    }

    Pdag apply_delete(const Pdag& g, const Move& m) const {
        Pdag next = g;
        next.remove_edge(m.from, m.to);
        NodeSet keep;
        for (Node h : g.neighbors(m.to)) {
            if (h == m.from || !g.adjacent(h, m.from)) continue;
            if (contains(m.subset, h)) {
                next.orient(m.to, h);
                if (g.has_undirected(m.from, h)) next.orient(m.from, h);
            } else {
                keep.push_back(h);
            }
        }
        Pdag oriented = next;
        for (Node v : keep) oriented.orient(v, m.to);
        try {
            return consistent_extension(oriented, knowledge());
        } catch (const ExtensionError&) {
            return consistent_extension(next, knowledge());
        }
    }

    Pdag apply_reverse(const Pdag& g, const Move& m) const {
        Pdag ext = consistent_extension(g, knowledge());
        ext.orient(m.to, m.from);
        if (has_directed_cycle(ext)) throw ExtensionError(ExtensionError::Kind::NoConsistentExtension, "reversal creates a cycle");
        return ext;
    }

    const GaussianScorer& scorer_;
    ClassKind kind_;
    SearchOptions options_;
    SearchStats stats_;
};

namespace detail {

inline SearchResult finish(SearchState state, const GreedySearch& search, std::chrono::steady_clock::time_point t0) {
    SearchResult r{std::move(state.graph), state.score, std::move(state.trace), search.stats()};
    r.stats.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace detail

/// Greedy equivalence search: forward insertions, then backward deletions.
/// The scorer must not carry tiers.
inline SearchResult ges(const GaussianScorer& scorer, SearchOptions options = {}) {
    if (scorer.knowledge()) throw KnowledgeError("ges expects a plain BIC scorer without tiers");
    const auto t0 = std::chrono::steady_clock::now();
    GreedySearch search(scorer, ClassKind::Cpdag, options);
    SearchState state = search.initial_state();
    search.run_phase(state, MoveKind::Insert);
    search.run_phase(state, MoveKind::Delete);
    return detail::finish(std::move(state), search, t0);
}

/// Tiered knowledge applied after the fact: GES, drop directed edges that
/// contradict k, restrict, then close under Meek rules 1-4.
inline SearchResult stges(const GaussianScorer& scorer, const TieredKnowledge& k, SearchOptions options = {}) {
    SearchResult r = ges(scorer, options);
    r.graph = meek_closure(restrict_to_knowledge(remove_contradicting(r.graph, k), k), MeekRules::all());
    return r;
}

/// Temporal GES. Cycles through forward, backward and turning phases over
/// tiered MPDAGs until a whole cycle changes nothing.
inline SearchResult tges(const GaussianScorer& scorer, SearchOptions options = {}) {
    if (!scorer.knowledge()) throw KnowledgeError("tges needs a scorer with a tier assignment");
    const auto t0 = std::chrono::steady_clock::now();
    GreedySearch search(scorer, ClassKind::TieredMpdag, options);
    SearchState state = search.initial_state();
    std::size_t cycles = 0;
    bool capped = true;
    while (cycles < options.max_cycles) {
        ++cycles;
        bool changed = search.run_phase(state, MoveKind::Insert);
        changed = search.run_phase(state, MoveKind::Delete) || changed;
        changed = search.run_phase(state, MoveKind::Reverse) || changed;
        if (!changed) {
            capped = false;
            break;
        }
    }
    if (capped) warn("tges stopped at the cycle cap of " + std::to_string(options.max_cycles));
    SearchResult r = detail::finish(std::move(state), search, t0);
    r.stats.cycles = cycles;
    r.stats.hit_cycle_cap = capped;
    return r;
}

inline std::string write_trace_csv(const std::vector<TraceEntry>& trace, const std::vector<std::string>& labels) {
    std::ostringstream out;
    out << "step,kind,from,to,delta,score\n";
    for (const TraceEntry& t : trace) {
        out << t.step << ',' << to_string(t.kind) << ',' << labels.at(t.from) << ',' << labels.at(t.to) << ','
            << io::format_double(t.delta) << ',' << io::format_double(t.score) << '\n';
    }
    return out.str();
}

}  // namespace tges
