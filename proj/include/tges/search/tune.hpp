#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "tges/search/greedy.hpp"

namespace tges {

struct LambdaBracket {
    double lo = 1e-3;
    double hi = 1e5;
    int max_evaluations = 48;
};

struct LambdaTuning {
    double lambda = 1.0;
    std::size_t edges = 0;
    /// Every (lambda, edge count) pair that was evaluated, in evaluation order.
    std::vector<std::pair<double, std::size_t>> evaluations;
};

/// Edge count of the TGES estimate at penalty scale lambda.
inline std::size_t tges_edge_count(const GaussianScorer& scorer, double lambda) {
    SearchOptions options;
    options.record_trace = false;
    return tges(scorer.with_lambda(lambda), options).graph.num_edges();
}

/// Penalty scale for which TGES returns (as close as possible to) target_edges edges.
///
/// Bisects on a log scale for the largest lambda still giving at least the
/// target count, relying on the edge count being (roughly) non-increasing in
/// lambda. The answer is the evaluated lambda whose count is closest to the
/// target; ties go to the larger lambda.
inline LambdaTuning tune_lambda(const GaussianScorer& scorer, std::size_t target_edges, LambdaBracket bracket = {}) {
    if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) throw Error("lambda bracket must satisfy 0 < lo < hi");
    LambdaTuning out;
    auto eval = [&](double lambda) {
        const std::size_t e = tges_edge_count(scorer, lambda);
        out.evaluations.emplace_back(lambda, e);
        return e;
    };

    double lo = bracket.lo;
    double hi = bracket.hi;
    const std::size_t e_lo = eval(lo);
    const std::size_t e_hi = eval(hi);
    if (target_edges > e_lo || target_edges < e_hi) {
        throw Error("target unreachable in lambda range: " + std::to_string(target_edges) + " edges requested, range gives " +
                    std::to_string(e_hi) + ".." + std::to_string(e_lo));
    }
    if (e_hi != target_edges) {
        for (int i = 2; i < bracket.max_evaluations && hi / lo > 1.0 + 1e-9; ++i) {
            const double mid = std::sqrt(lo * hi);
            (eval(mid) >= target_edges ? lo : hi) = mid;
        }
    }

    const auto distance = [&](std::size_t e) { return e > target_edges ? e - target_edges : target_edges - e; };
    bool first = true;
    for (const auto& [lambda, e] : out.evaluations) {
        if (first || distance(e) < distance(out.edges) || (distance(e) == distance(out.edges) && lambda > out.lambda)) {
            out.lambda = lambda;
            out.edges = e;
            first = false;
        }
    }
    return out;
}

}  // namespace tges
