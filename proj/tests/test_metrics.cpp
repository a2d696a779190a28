#include <gtest/gtest.h>

#include "support.hpp"

using namespace tges;

TEST(Sshd, Examples) {
    const Pdag g = make_dag(4, {{0, 1}, {2, 3}});
    EXPECT_EQ(sshd(g, g), 0.0);
    const Pdag truth = make_dag(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    EXPECT_DOUBLE_EQ(sshd(Pdag(5), truth), 4.0 / 10.0);
    Pdag und(3);
    und.add_undirected(0, 1);
    EXPECT_DOUBLE_EQ(sshd(make_dag(3, {{0, 1}}), und), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(sshd(make_dag(3, {{1, 0}}), make_dag(3, {{0, 1}})), 1.0 / 3.0);
    EXPECT_THROW(sshd(Pdag(2), Pdag(3)), GraphError);
}

TEST(Sshd, SymmetricAndZeroOnlyOnEquality) {
    Rng rng(4);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t d = rng.uniform_int<std::size_t>(2, 8);
        const Pdag a = dag_to_cpdag(fixtures::random_dag(d, 0.4, rng));
        const Pdag b = dag_to_cpdag(fixtures::random_dag(d, 0.4, rng));
        EXPECT_EQ(sshd(a, b), sshd(b, a));
        EXPECT_EQ(sshd(a, b) == 0.0, a == b);
    }
}

TEST(Adjacency, Examples) {
    const Pdag g = make_dag(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    const ConfusionMatrix same = adjacency_confusion(g, g);
    EXPECT_EQ(same, (ConfusionMatrix{5, 0, 0, 5}));
    Pdag und(2);
    und.add_undirected(0, 1);
    EXPECT_EQ(adjacency_confusion(make_dag(2, {{0, 1}}), und).tp, 1u);
    EXPECT_EQ(adjacency_confusion(Pdag(5), g).fn, 5u);
}

TEST(ConfusionMatrix, AbsentRatesOnZeroDenominators) {
    const ConfusionMatrix empty{};
    EXPECT_FALSE(empty.precision());
    EXPECT_FALSE(empty.recall());
    const ConfusionMatrix m{3, 1, 2, 0};
    EXPECT_DOUBLE_EQ(*m.precision(), 0.75);
    EXPECT_DOUBLE_EQ(*m.recall(), 0.6);
}

TEST(Direction, Examples) {
    const auto dir = [](const Pdag& e, const Pdag& t) { return direction_confusion(e, t, false, std::nullopt).counts; };
    EXPECT_EQ(dir(make_dag(2, {{0, 1}}), make_dag(2, {{0, 1}})).tp, 1u);
    const ConfusionMatrix reversed = dir(make_dag(2, {{0, 1}}), make_dag(2, {{1, 0}}));
    EXPECT_EQ(reversed.fp, 1u);
    EXPECT_EQ(reversed.fn, 1u);
    EXPECT_EQ(reversed.tp, 0u);
    Pdag und(2);
    und.add_undirected(0, 1);
    EXPECT_EQ(dir(und, und).tn, 1u);
    EXPECT_THROW(direction_confusion(und, und, true, std::nullopt), KnowledgeError);
}

TEST(Direction, AdjacencyMismatchIsNotScored) {
    const DirectionConfusion r = direction_confusion(make_dag(3, {{0, 1}}), make_dag(3, {{1, 2}}), false, std::nullopt);
    EXPECT_EQ(r.counts, ConfusionMatrix{});
    EXPECT_EQ(r.not_scored, 3u);
}

TEST(Evaluate, IdentityAndEmptyEstimates) {
    SimConfig cfg;
    cfg.seed = 3;
    const GroundTruth gt = gen_truth(cfg);
    const EvalReport same = evaluate(gt.target, gt.target, gt.knowledge);
    EXPECT_EQ(same.sshd, 0.0);
    EXPECT_EQ(same.adjacency.fp + same.adjacency.fn, 0u);
    EXPECT_EQ(same.all_direction.fp + same.all_direction.fn, 0u);
    EXPECT_EQ(same.in_tier_direction.fp + same.in_tier_direction.fn, 0u);

    const EvalReport empty = evaluate(Pdag(gt.dag.size()), gt.target, gt.knowledge);
    EXPECT_EQ(*empty.adjacency.recall(), 0.0);
    EXPECT_FALSE(empty.adjacency.precision());
}

TEST(Evaluate, InvariantsOnRandomPairs) {
    Rng rng(10);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = rng.uniform_int<std::size_t>(2, 10);
        const Pdag truth_dag = fixtures::random_dag(d, 0.5, rng);
        const TieredKnowledge k = fixtures::random_tiers_for(truth_dag, 3, rng);
        const Pdag truth = tiered_mpdag_of(truth_dag, k);
        const Pdag est = dag_to_cpdag(fixtures::random_dag(d, 0.5, rng));
        const EvalReport r = evaluate(est, truth, k);
        const std::size_t pairs = d * (d - 1) / 2;
        EXPECT_EQ(r.adjacency.tp + r.adjacency.fp + r.adjacency.fn + r.adjacency.tn, pairs);
        // Direction metrics only see the pairs that are adjacent in both graphs.
        const auto scored = [](const ConfusionMatrix& m) { return m.tp + m.tn + m.fp + m.fn; };
        const std::size_t opposite = scored(r.all_direction) - r.adjacency.tp;
        EXPECT_EQ(r.all_direction_not_scored, pairs - r.adjacency.tp);
        EXPECT_LE(opposite, r.adjacency.tp);
        EXPECT_LE(r.in_tier_direction.tp, r.all_direction.tp);
        EXPECT_LE(r.in_tier_direction.fp, r.all_direction.fp);
        EXPECT_LE(r.in_tier_direction.fn, r.all_direction.fn);
        EXPECT_LE(r.in_tier_direction.tn, r.all_direction.tn);
        EXPECT_GE(r.sshd, 0.0);
    }
}

TEST(Summary, QuartilesAndMedian) {
    EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
    const auto q = summarize({1.0, std::nullopt, 2.0, 3.0, 4.0, 5.0});
    ASSERT_TRUE(q);
    EXPECT_EQ(q->count, 5u);
    EXPECT_DOUBLE_EQ(q->q1, 2.0);
    EXPECT_DOUBLE_EQ(q->median, 3.0);
    EXPECT_DOUBLE_EQ(q->q3, 4.0);
    EXPECT_FALSE(summarize({std::nullopt}));
    EXPECT_THROW(median({}), Error);
}

TEST(Summary, SignTestPValue) {
    // P(X >= 8) for X ~ Bin(10, 1/2) = (45 + 10 + 1) / 1024.
    EXPECT_NEAR(sign_test_p_value(8, 2), 56.0 / 1024.0, 1e-12);
    EXPECT_DOUBLE_EQ(sign_test_p_value(0, 5), 1.0);
    EXPECT_NEAR(sign_test_p_value(5, 0), 1.0 / 32.0, 1e-12);
    EXPECT_EQ(sign_test_p_value(0, 0), 1.0);
}
