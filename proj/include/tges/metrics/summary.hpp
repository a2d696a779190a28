#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "tges/error.hpp"

namespace tges {

struct Quartiles {
    std::size_t count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Quantile with linear interpolation between order statistics (R type 7).
inline double quantile(std::vector<double> values, double prob) {
    if (values.empty()) throw Error("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

inline double median(const std::vector<double>& values) { return quantile(values, 0.5); }

/// Summary of the present values; absent ones (undefined precision/recall) are dropped.
inline std::optional<Quartiles> summarize(const std::vector<std::optional<double>>& values) {
    std::vector<double> present;
    for (const auto& v : values) {
        if (v) present.push_back(*v);
    }
    if (present.empty()) return std::nullopt;
    Quartiles q;
    q.count = present.size();
    q.min = *std::min_element(present.begin(), present.end());
    q.max = *std::max_element(present.begin(), present.end());
    q.q1 = quantile(present, 0.25);
    q.median = quantile(present, 0.5);
    q.q3 = quantile(present, 0.75);
    return q;
}

/// One-sided exact sign test: P(X >= positives) for X ~ Binomial(positives + negatives, 1/2).
inline double sign_test_p_value(std::size_t positives, std::size_t negatives) {
    const std::size_t n = positives + negatives;
    if (n == 0) return 1.0;
    double p = 0.0;
    for (std::size_t k = positives; k <= n; ++k) {
        const double log_term = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                                std::lgamma(static_cast<double>(n - k) + 1) - static_cast<double>(n) * std::log(2.0);
        p += std::exp(log_term);
    }
    return std::min(p, 1.0);
}

}  // namespace tges
