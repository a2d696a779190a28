#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace tges;

namespace {

/// Labeled DAG counts from Robinson's recurrence
/// a(n) = sum_{k=1..n} (-1)^(k+1) C(n,k) 2^(k(n-k)) a(n-k).
long long robinson(int n) {
    std::vector<long long> a(static_cast<std::size_t>(n) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        long long total = 0;
        long long binom = 1;
        for (int k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            const long long term = binom * (1LL << (k * (m - k))) * a[static_cast<std::size_t>(m - k)];
            total += (k % 2 == 1) ? term : -term;
        }
        a[static_cast<std::size_t>(m)] = total;
    }
    return a[static_cast<std::size_t>(n)];
}

}  // namespace

TEST(EnumerateDags, CountsMatchRecurrence) {
    EXPECT_EQ(robinson(2), 3);
    EXPECT_EQ(robinson(3), 25);
    EXPECT_EQ(robinson(4), 543);
    for (int d = 0; d <= 5; ++d) {
        EXPECT_EQ(static_cast<long long>(enumerate_dags(static_cast<std::size_t>(d)).size()), robinson(d)) << "d=" << d;
    }
}

TEST(EnumerateDags, DistinctAcyclicAndOrdered) {
    const std::vector<Pdag> dags = enumerate_dags(4);
    std::set<Pdag> unique(dags.begin(), dags.end());
    EXPECT_EQ(unique.size(), dags.size());
    for (const Pdag& g : dags) EXPECT_TRUE(is_dag(g));
    EXPECT_EQ(dags.front(), Pdag(4));
    const std::vector<Pdag> two = enumerate_dags(2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[1], make_dag(2, {{0, 1}}));
    EXPECT_EQ(two[2], make_dag(2, {{1, 0}}));
}

TEST(EnumerateDags, RejectsLargeD) {
    EXPECT_THROW(enumerate_dags(6), Error);
}

TEST(BestScoringGraphs, IndependentDataGivesEmptyDag) {
    const GroundTruth gt = fixtures::make_truth(Pdag(3), TieredKnowledge::single_tier(3), 0.0);
    const GaussianScorer s(fixtures::sample(gt, 100000, 1));
    const std::vector<Pdag> best = best_scoring_graphs(s);
    ASSERT_EQ(best.size(), 1u);
    EXPECT_EQ(best[0], Pdag(3));
}

TEST(BestScoringGraphs, ChainGivesItsWholeClass) {
    const Pdag chain = make_dag(3, {{0, 1}, {1, 2}});
    const GroundTruth gt = fixtures::make_truth(chain, TieredKnowledge::single_tier(3), 0.8);
    const GaussianScorer s(fixtures::sample(gt, 100000, 2), TieredKnowledge::single_tier(3));
    const std::vector<Pdag> best = best_scoring_graphs(s);
    EXPECT_EQ(best.size(), 3u);
    for (const Pdag& g : best) EXPECT_TRUE(markov_equivalent(g, chain));
}

TEST(BestScoringGraphs, TiersExcludeContradictingMembers) {
    const Pdag chain = make_dag(3, {{0, 1}, {1, 2}});
    const TieredKnowledge k({1, 2, 2});
    const GaussianScorer s(fixtures::sample(fixtures::make_truth(chain, k, 0.8), 100000, 2), k);
    const std::vector<Pdag> best = best_scoring_graphs(s);
    ASSERT_EQ(best.size(), 1u);
    EXPECT_EQ(best[0], chain);
}

TEST(RestrictedClass, Examples) {
    const Pdag xy = make_dag(2, {{0, 1}});
    EXPECT_EQ(restricted_class_of(xy, TieredKnowledge({1, 2})).size(), 1u);
    EXPECT_EQ(restricted_class_of(xy, TieredKnowledge({1, 1})).size(), 2u);
    EXPECT_EQ(restricted_class_of(make_dag(3, {{0, 1}, {1, 2}}), TieredKnowledge::single_tier(3)).size(), 3u);
    EXPECT_THROW(restricted_class_of(make_dag(2, {{1, 0}}), TieredKnowledge({1, 2})), KnowledgeError);
}

TEST(RestrictedClass, MembersShareTheirTieredMpdag) {
    const std::vector<Pdag> dags = enumerate_dags(4);
    const TieredKnowledge k({1, 2, 1, 2});
    for (std::size_t i = 0; i < dags.size(); i += 3) {
        if (!encodes(dags[i], k)) continue;
        const Pdag image = tiered_mpdag_of(dags[i], k);
        for (const Pdag& member : restricted_class_of(dags[i], k)) ASSERT_EQ(tiered_mpdag_of(member, k), image);
    }
}

TEST(RestrictedClass, SizeMatchesConsistentExtensionCount) {
    // Every k-encoding DAG consistent with the tiered MPDAG is in the class.
    const std::vector<Pdag> dags = enumerate_dags(4);
    const TieredKnowledge k({1, 1, 2, 2});
    for (std::size_t i = 0; i < dags.size(); i += 7) {
        if (!encodes(dags[i], k)) continue;
        const Pdag m = tiered_mpdag_of(dags[i], k);
        std::size_t consistent = 0;
        for (const Pdag& g : dags) {
            bool keeps = markov_equivalent(g, dags[i]);
            for (const Edge& e : m.edges()) keeps = keeps && (!e.directed || g.has_directed(e.from, e.to));
            if (keeps) ++consistent;
        }
        EXPECT_EQ(restricted_class_of(dags[i], k).size(), consistent);
    }
}
