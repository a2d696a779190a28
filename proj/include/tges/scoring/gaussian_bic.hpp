#pragma once

#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include <Eigen/Cholesky>

#include "tges/graph/extension.hpp"
#include "tges/graph/knowledge.hpp"
#include "tges/graph/properties.hpp"
#include "tges/log.hpp"
#include "tges/scoring/dataset.hpp"
#include "tges/scoring/score.hpp"

namespace tges {

/// Residual variances below this are clamped (with a warning) instead of
/// producing an infinite log-likelihood.
inline constexpr double kVarianceFloor = 1e-12;

namespace detail {

struct FamilyKey {
    Node node;
    NodeSet parents;
    friend bool operator==(const FamilyKey&, const FamilyKey&) = default;
};

struct FamilyKeyHash {
    std::size_t operator()(const FamilyKey& key) const noexcept {
        std::size_t h = std::hash<Node>{}(key.node);
        for (Node p : key.parents) h ^= std::hash<Node>{}(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace detail

/// Decomposable Gaussian BIC, and its tiered variant when knowledge is given.
///
/// Local score of node i with parents P:
///     -(n/2) (log(2 pi s2) + 1) - lambda * (|P|/2) log n
/// where s2 is the ML residual variance of regressing i on P, taken from the
/// covariance by a Schur complement. With tiers, a parent from a later tier
/// gives the contradiction score instead.
///
/// Local BIC values are memoized; the cache may be shared across threads.
class GaussianScorer {
public:
    explicit GaussianScorer(std::shared_ptr<const Dataset> data, std::optional<TieredKnowledge> knowledge = std::nullopt,
                            double lambda = 1.0)
        : data_(std::move(data)), knowledge_(std::move(knowledge)), lambda_(lambda) {
        if (!data_) throw Error("scorer needs a dataset");
        if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) throw Error("penalty scale lambda must be finite and >= 0");
        if (knowledge_ && knowledge_->size() != data_->d()) {
            throw KnowledgeError("tier assignment covers " + std::to_string(knowledge_->size()) +
                                 " variables, data has " + std::to_string(data_->d()));
        }
    }

    GaussianScorer(const GaussianScorer& other)
        : data_(other.data_), knowledge_(other.knowledge_), lambda_(other.lambda_) {}

    const Dataset& data() const noexcept { return *data_; }
    std::shared_ptr<const Dataset> data_ptr() const noexcept { return data_; }
    std::size_t num_variables() const noexcept { return data_->d(); }
    const std::optional<TieredKnowledge>& knowledge() const noexcept { return knowledge_; }
    double lambda() const noexcept { return lambda_; }

    /// Same data and knowledge, different penalty scale, fresh cache.
    GaussianScorer with_lambda(double lambda) const { return GaussianScorer(data_, knowledge_, lambda); }
    GaussianScorer without_knowledge() const { return GaussianScorer(data_, std::nullopt, lambda_); }

    Score local_bic(Node node, const NodeSet& parents) const {
        check_family(node, parents);
        detail::FamilyKey key{node, parents};
        {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return Score(it->second);
        }
        const double value = compute_bic(node, parents);
        {
            std::unique_lock lock(mutex_);
            cache_.insert_or_assign(std::move(key), value);
        }
        return Score(value);
    }

    Score local_tbic(Node node, const NodeSet& parents) const {
        if (!knowledge_) throw KnowledgeError("local_tbic needs a tier assignment");
        check_family(node, parents);
        for (Node p : parents) {
            if (knowledge_->forbids(p, node)) return Score::contradiction();
        }
        return local_bic(node, parents);
    }

    /// TBIC when the scorer has tiers, BIC otherwise.
    Score local(Node node, const NodeSet& parents) const {
        return knowledge_ ? local_tbic(node, parents) : local_bic(node, parents);
    }

    Score total_score(const Pdag& dag) const {
        require_dag(dag, "total_score");
        if (dag.size() != num_variables()) throw GraphError("graph and data have different variable counts");
        Score total;
        for (Node i = 0; i < dag.size(); ++i) total += local(i, dag.parents(i));
        return total;
    }

    /// Score of the class represented by a CPDAG or MPDAG, via one of its extensions.
    Score score_class(const Pdag& g) const { return total_score(consistent_extension(g, knowledge_)); }

    void clear_cache() const {
        std::unique_lock lock(mutex_);
        cache_.clear();
    }
    std::size_t cache_size() const {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }
    std::size_t variance_floor_hits() const noexcept { return floor_hits_.load(); }

private:
    void check_family(Node node, const NodeSet& parents) const {
        const std::size_t d = num_variables();
        if (node >= d) throw GraphError("node index out of range");
        for (std::size_t i = 0; i < parents.size(); ++i) {
            if (parents[i] >= d) throw GraphError("parent index out of range");
            if (parents[i] == node) throw GraphError("node cannot be its own parent");
            if (i > 0 && parents[i - 1] >= parents[i]) throw GraphError("parent set must be sorted and unique");
        }
    }

    double compute_bic(Node node, const NodeSet& parents) const {
        const Eigen::MatrixXd& cov = data_->covariance();
        const auto i = static_cast<Eigen::Index>(node);
        double residual = cov(i, i);
        if (!parents.empty()) {
            const auto k = static_cast<Eigen::Index>(parents.size());
            Eigen::MatrixXd spp(k, k);
            Eigen::VectorXd spi(k);
            for (Eigen::Index a = 0; a < k; ++a) {
                const auto pa = static_cast<Eigen::Index>(parents[static_cast<std::size_t>(a)]);
                spi(a) = cov(pa, i);
                for (Eigen::Index b = 0; b < k; ++b) spp(a, b) = cov(pa, static_cast<Eigen::Index>(parents[static_cast<std::size_t>(b)]));
            }
            Eigen::LLT<Eigen::MatrixXd> llt(spp);
            if (llt.info() != Eigen::Success) {
                throw CollinearParentsError("collinear parents for variable " + data_->labels()[node]);
            }
            residual -= spi.dot(llt.solve(spi));
        }
        if (!(residual >= kVarianceFloor)) {
            if (floor_hits_.fetch_add(1) == 0) {
                warn("residual variance of " + data_->labels()[node] + " floored at 1e-12 (near-deterministic relation)");
            }
            residual = kVarianceFloor;
        }
        const double n = static_cast<double>(data_->n());
        const double loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * residual) + 1.0);
        const double penalty = lambda_ * 0.5 * static_cast<double>(parents.size()) * std::log(n);
        return loglik - penalty;
    }

    std::shared_ptr<const Dataset> data_;
    std::optional<TieredKnowledge> knowledge_;
    double lambda_ = 1.0;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<detail::FamilyKey, double, detail::FamilyKeyHash> cache_;
    mutable std::atomic<std::size_t> floor_hits_{0};
};

}  // namespace tges
