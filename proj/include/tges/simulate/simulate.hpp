#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tges/graph/mpdag.hpp"
#include "tges/scoring/dataset.hpp"
#include "tges/simulate/rng.hpp"

namespace tges {

/// Random tiered linear-Gaussian model. Defaults follow the simulation protocol:
/// 7..20 nodes, edge probability Unif(0.1, 0.8), three tiers, weights Unif(0, 1),
/// n = 10000.
struct SimConfig {
    std::size_t d_min = 7;
    std::size_t d_max = 20;
    double edge_prob_min = 0.1;
    double edge_prob_max = 0.8;
    std::size_t n = 10000;
    std::size_t tiers = 3;
    double weight_min = 0.0;
    double weight_max = 1.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (d_min < 2 || d_max > 1000 || d_min > d_max) throw Error("node range must satisfy 2 <= d-min <= d-max <= 1000");
        if (!(edge_prob_min >= 0.0) || !(edge_prob_max <= 1.0) || edge_prob_min > edge_prob_max) {
            throw Error("edge probabilities must satisfy 0 <= min <= max <= 1");
        }
        if (n < 1) throw Error("sample size must be >= 1");
        if (tiers < 1 || tiers > d_min) throw Error("tier count must be between 1 and d-min");
        if (!(weight_min <= weight_max)) throw Error("weight range must satisfy min <= max");
    }
};

struct GroundTruth {
    Pdag dag;
    /// weights(i, j) is the coefficient of edge i -> j (0 when absent).
    Eigen::MatrixXd weights;
    TieredKnowledge knowledge;
    /// Tiered MPDAG of `dag`; the reference the estimates are compared to.
    Pdag target;
    double edge_prob = 0.0;
    /// Causal order used for generation; tiers are contiguous blocks of it.
    std::vector<Node> order;
};

inline std::vector<std::string> default_labels(std::size_t d) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) labels.push_back("X" + std::to_string(i + 1));
    return labels;
}

/// Erdős–Rényi DAG over a uniformly random causal order, tiers cut from that
/// order at uniformly random points (every tier nonempty), weights uniform.
/// Edgeless draws are rejected.
inline GroundTruth gen_truth(const SimConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed, RngStream::Truth);
    constexpr int kMaxRedraws = 10000;
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const auto d = rng.uniform_int<std::size_t>(cfg.d_min, cfg.d_max);
        const double p = rng.uniform(cfg.edge_prob_min, cfg.edge_prob_max);

        std::vector<Node> order(d);
        for (Node i = 0; i < d; ++i) order[i] = i;
        for (std::size_t i = d - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int<std::size_t>(0, i)]);

        Pdag dag(d, default_labels(d));
        Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a + 1; b < d; ++b) {
                if (rng.uniform01() < p) dag.add_directed(order[a], order[b]);
            }
        }
        if (dag.num_edges() == 0) continue;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a + 1; b < d; ++b) {
                if (dag.has_directed(order[a], order[b])) {
                    weights(static_cast<Eigen::Index>(order[a]), static_cast<Eigen::Index>(order[b])) =
                        rng.uniform(cfg.weight_min, cfg.weight_max);
                }
            }
        }

        // tiers-1 distinct cut positions in 1..d-1; a cut at c starts a new tier at order[c].
        std::vector<std::size_t> positions(d - 1);
        for (std::size_t i = 0; i + 1 < d; ++i) positions[i] = i + 1;
        std::vector<bool> cut(d, false);
        for (std::size_t i = 0; i + 1 < cfg.tiers; ++i) {
            std::swap(positions[i], positions[rng.uniform_int<std::size_t>(i, positions.size() - 1)]);
            cut[positions[i]] = true;
        }
        std::vector<int> tiers(d, 0);
        int tier = 1;
        for (std::size_t pos = 0; pos < d; ++pos) {
            if (cut[pos]) ++tier;
            tiers[order[pos]] = tier;
        }

        GroundTruth gt;
        gt.knowledge = TieredKnowledge(std::move(tiers));
        gt.target = tiered_mpdag_of(dag, gt.knowledge);
        gt.target.set_labels(dag.labels());
        gt.dag = std::move(dag);
        gt.weights = std::move(weights);
        gt.edge_prob = p;
        gt.order = std::move(order);
        return gt;
    }
    throw Error("gen_truth: no DAG with at least one edge after 10000 draws");
}

/// n observations of the linear SEM X_j = sum_i w_ij X_i + e_j with e_j ~ N(0, 1).
inline Dataset sample_data(const GroundTruth& gt, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw Error("sample size must be >= 1");
    Rng rng(seed, RngStream::Data);
    const auto d = static_cast<Eigen::Index>(gt.dag.size());
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), d);
    for (Node j : gt.order) {
        const auto col = static_cast<Eigen::Index>(j);
        for (Eigen::Index r = 0; r < x.rows(); ++r) x(r, col) = rng.normal();
        for (Node i : gt.dag.parents(j)) {
            x.col(col) += gt.weights(static_cast<Eigen::Index>(i), col) * x.col(static_cast<Eigen::Index>(i));
        }
    }
    return Dataset::from_samples(std::move(x), gt.dag.labels());
}

/// Seed of replicate `index` in a study seeded with `study_seed`.
inline std::uint64_t replicate_seed(std::uint64_t study_seed, std::uint64_t index) {
    return derive_seed(derive_seed(study_seed, static_cast<std::uint64_t>(RngStream::Replicate)), index);
}

struct Replicate {
    std::uint64_t seed = 0;
    GroundTruth truth;
    Dataset data;
};

/// Truth and cfg.n samples for one replicate of a study.
inline Replicate simulate_replicate(const SimConfig& cfg, std::uint64_t index) {
    SimConfig rc = cfg;
    rc.seed = replicate_seed(cfg.seed, index);
    Replicate r{rc.seed, gen_truth(rc), {}};
    r.data = sample_data(r.truth, cfg.n, rc.seed);
    return r;
}

/// Population covariance (I - W^T)^-1 (I - W)^-1 of the model with unit noise.
inline Eigen::MatrixXd implied_covariance(const GroundTruth& gt) {
    const auto d = gt.weights.rows();
    const Eigen::MatrixXd a = (Eigen::MatrixXd::Identity(d, d) - gt.weights.transpose()).inverse();
    return a * a.transpose();
}

}  // namespace tges
