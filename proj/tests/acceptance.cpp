// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any criterion fails. Optional arguments select criteria by number.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace tges;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string ratio(std::size_t hits, std::size_t total) { return std::to_string(hits) + "/" + std::to_string(total); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

SearchOptions quiet() {
    SearchOptions o;
    o.record_trace = false;
    return o;
}

bool contradicts(const Pdag& g, const TieredKnowledge& k) {
    for (const Edge& e : g.edges()) {
        if (e.directed && k.forbids(e.from, e.to)) return true;
    }
    return false;
}

/// d = 4, two tiers, weights bounded away from zero.
Replicate small_replicate(std::uint64_t seed) {
    SimConfig cfg;
    cfg.d_min = cfg.d_max = 4;
    cfg.tiers = 2;
    cfg.weight_min = 0.5;
    cfg.weight_max = 1.0;
    cfg.n = 100000;
    cfg.seed = 2024;
    return simulate_replicate(cfg, seed);
}

// 1 -------------------------------------------------------------------------
Outcome tiered_mpdag_closure() {
    std::size_t closed = 0, clean = 0;
    const std::size_t runs = 500;
    for (std::size_t run = 0; run < runs; ++run) {
        SimConfig cfg;
        cfg.d_min = 4;
        cfg.d_max = 8;
        cfg.tiers = 1 + run % 4;
        cfg.n = 1000;
        cfg.seed = 11;
        const Replicate rep = simulate_replicate(cfg, run);
        const auto data = std::make_shared<const Dataset>(rep.data);
        const TieredKnowledge& k = rep.truth.knowledge;
        const Pdag out = tges::tges(GaussianScorer(data, k), quiet()).graph;
        if (contradicts(out, k)) continue;
        ++clean;
        if (meek_closure(restrict_to_knowledge(out, k), MeekRules::rule1()) == out) ++closed;
    }
    return {closed == runs && clean == runs,
            "closed " + ratio(closed, runs) + ", no contradicting edge " + ratio(clean, runs)};
}

// 2 -------------------------------------------------------------------------
Outcome large_sample_recovery() {
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Replicate rep = small_replicate(seed);
        const auto data = std::make_shared<const Dataset>(rep.data);
        if (tges::tges(GaussianScorer(data, rep.truth.knowledge), quiet()).graph == rep.truth.target) ++hits;
    }
    return {hits >= 95, "output equals target in " + ratio(hits, 100) + " (need >= 95)"};
}

// 3 -------------------------------------------------------------------------
Outcome oracle_equivalence() {
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Replicate rep = small_replicate(seed);
        const auto data = std::make_shared<const Dataset>(rep.data);
        const TieredKnowledge& k = rep.truth.knowledge;
        const GaussianScorer scorer(data, k);
        const Pdag out = tges::tges(scorer, quiet()).graph;
        const std::vector<Pdag> best = best_scoring_graphs(scorer);
        const std::vector<Pdag> cls = restricted_class_of(consistent_extension(out, k), k);
        if (std::set<Pdag>(best.begin(), best.end()) == std::set<Pdag>(cls.begin(), cls.end())) ++hits;
    }
    return {hits >= 95, "class equals brute-force argmax class in " + ratio(hits, 100) + " (need >= 95)"};
}

// 4 -------------------------------------------------------------------------
std::vector<TieredKnowledge> tier_assignments(std::size_t d) {
    std::vector<int> halves(d), alternating(d), staircase(d);
    for (std::size_t i = 0; i < d; ++i) {
        halves[i] = 1 + (2 * i >= d ? 1 : 0);
        alternating[i] = 1 + static_cast<int>(i % 2);
        staircase[i] = static_cast<int>(std::min<std::size_t>(i + 1, 3));
    }
    return {TieredKnowledge(halves), TieredKnowledge(alternating), TieredKnowledge(staircase)};
}

Outcome k_score_equivalence() {
    std::size_t classes = 0, failures = 0;
    for (std::size_t d = 2; d <= 4; ++d) {
        const std::vector<Pdag> dags = enumerate_dags(d);
        for (const TieredKnowledge& k : tier_assignments(d)) {
            std::vector<std::vector<Pdag>> partition;
            std::set<Pdag> seen;
            for (const Pdag& g : dags) {
                if (!encodes(g, k) || seen.count(g)) continue;
                partition.push_back(restricted_class_of(g, k));
                seen.insert(partition.back().begin(), partition.back().end());
            }
            for (std::uint64_t ds = 0; ds < 10; ++ds) {
                SimConfig cfg;
                cfg.d_min = cfg.d_max = d;
                cfg.tiers = 1;
                cfg.n = 500;
                cfg.seed = 400 + d;
                const GaussianScorer scorer(std::make_shared<const Dataset>(simulate_replicate(cfg, ds).data), k);
                for (const std::vector<Pdag>& members : partition) {
                    ++classes;
                    const double ref = scorer.total_score(members.front()).value();
                    for (const Pdag& g : members) {
                        const double s = scorer.total_score(g).value();
                        if (!(std::abs(s - ref) <= 1e-9 * std::max(std::abs(s), std::abs(ref)))) {
                            ++failures;
                            break;
                        }
                    }
                }
            }
        }
    }
    return {failures == 0, std::to_string(failures) + " failing of " + std::to_string(classes) + " class checks"};
}

// 5 -------------------------------------------------------------------------
Outcome stges_skeleton_and_v_structures() {
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Replicate rep = small_replicate(seed);
        const auto data = std::make_shared<const Dataset>(rep.data);
        const Pdag out = stges(GaussianScorer(data), rep.truth.knowledge, quiet()).graph;
        if (same_skeleton(out, rep.truth.dag) && v_structures(out) == v_structures(rep.truth.dag)) ++hits;
    }
    return {hits >= 95, "skeleton and v-structures match in " + ratio(hits, 100) + " (need >= 95)"};
}

// 6 and 7 share one simulation study ------------------------------------------
struct Study {
    std::map<std::string, std::vector<double>> sshd;
    std::map<std::string, std::vector<std::optional<double>>> adj_precision, adj_recall;
};

const Study& simulation_study() {
    static const Study study = [] {
        Study s;
        SimConfig cfg;
        cfg.d_min = 7;
        cfg.d_max = 12;
        cfg.seed = 6;
        for (std::uint64_t r = 0; r < 200; ++r) {
            const Replicate rep = simulate_replicate(cfg, r);
            const auto data = std::make_shared<const Dataset>(rep.data);
            const TieredKnowledge& k = rep.truth.knowledge;
            const GaussianScorer bic(data);
            const std::map<std::string, Pdag> est{
                {"ges", ges(bic, quiet()).graph},
                {"stges", stges(bic, k, quiet()).graph},
                {"tges", tges::tges(GaussianScorer(data, k), quiet()).graph},
            };
            for (const auto& [name, g] : est) {
                const EvalReport report = evaluate(g, rep.truth.target, k);
                s.sshd[name].push_back(report.sshd);
                s.adj_precision[name].push_back(report.adjacency.precision());
                s.adj_recall[name].push_back(report.adjacency.recall());
            }
        }
        return s;
    }();
    return study;
}

Outcome sshd_ordering() {
    const Study& s = simulation_study();
    const double m_tges = median(s.sshd.at("tges"));
    const double m_stges = median(s.sshd.at("stges"));
    const double m_ges = median(s.sshd.at("ges"));
    std::size_t better = 0, worse = 0;
    for (std::size_t r = 0; r < s.sshd.at("ges").size(); ++r) {
        const double gap = s.sshd.at("ges")[r] - s.sshd.at("tges")[r];
        if (gap > 0) ++better;
        if (gap < 0) ++worse;
    }
    const double p = sign_test_p_value(better, worse);
    return {m_tges < m_stges && m_stges < m_ges && p < 0.01,
            "median sSHD tges " + fmt(m_tges) + " < stges " + fmt(m_stges) + " < ges " + fmt(m_ges) +
                "; sign test " + std::to_string(better) + "+/" + std::to_string(worse) + "- p = " + fmt(p)};
}

Outcome adjacency_medians() {
    const Study& s = simulation_study();
    const auto med = [](const std::vector<std::optional<double>>& v) { return summarize(v).value().median; };
    const double rt = med(s.adj_recall.at("tges")), rg = med(s.adj_recall.at("ges"));
    const double pt = med(s.adj_precision.at("tges")), pg = med(s.adj_precision.at("ges"));
    return {rt >= rg && pt >= pg, "median adjacency recall tges " + fmt(rt) + " vs ges " + fmt(rg) +
                                      ", precision tges " + fmt(pt) + " vs ges " + fmt(pg)};
}

// 8 -------------------------------------------------------------------------
enum class Mark { None, Forward, Backward, Undirected };

Pdag pair_graph(Mark m) {
    Pdag g(2);
    if (m == Mark::Forward) g.add_directed(0, 1);
    if (m == Mark::Backward) g.add_directed(1, 0);
    if (m == Mark::Undirected) g.add_undirected(0, 1);
    return g;
}

const std::vector<Mark> kAnyEdge{Mark::Forward, Mark::Backward, Mark::Undirected};

struct TableRow {
    std::string name;
    std::vector<Mark> est;
    std::vector<Mark> truth;
    ConfusionMatrix expected;  // all zero with scored = false means NA
    bool scored = true;
};

Outcome metric_tables() {
    // Adjacency table: four rows.
    const std::vector<TableRow> adjacency{
        {"adj any/any", kAnyEdge, kAnyEdge, {1, 0, 0, 0}},
        {"adj none/any", {Mark::None}, kAnyEdge, {0, 0, 1, 0}},
        {"adj any/none", kAnyEdge, {Mark::None}, {0, 1, 0, 0}},
        {"adj none/none", {Mark::None}, {Mark::None}, {0, 0, 0, 1}},
    };
    // Direction table: eight rows.
    const std::vector<TableRow> direction{
        {"dir und/und", {Mark::Undirected}, {Mark::Undirected}, {0, 0, 0, 1}},
        {"dir und/dir", {Mark::Undirected}, {Mark::Forward}, {0, 0, 1, 0}},
        {"dir dir/und", {Mark::Forward}, {Mark::Undirected}, {0, 1, 0, 0}},
        {"dir dir/dir", {Mark::Forward}, {Mark::Forward}, {1, 0, 0, 0}},
        {"dir dir/reversed", {Mark::Forward}, {Mark::Backward}, {0, 1, 1, 0}},
        {"dir none/any", {Mark::None}, kAnyEdge, {}, false},
        {"dir any/none", kAnyEdge, {Mark::None}, {}, false},
        {"dir none/none", {Mark::None}, {Mark::None}, {}, false},
    };

    std::vector<std::string> failed;
    std::size_t checks = 0;
    for (const TableRow& row : adjacency) {
        for (Mark e : row.est) {
            for (Mark t : row.truth) {
                ++checks;
                if (adjacency_confusion(pair_graph(e), pair_graph(t)) != row.expected) failed.push_back(row.name);
            }
        }
    }
    const TieredKnowledge same({1, 1}), cross({1, 2});
    for (const TableRow& row : direction) {
        for (Mark e : row.est) {
            for (Mark t : row.truth) {
                ++checks;
                const Pdag est = pair_graph(e), truth = pair_graph(t);
                const DirectionConfusion all = direction_confusion(est, truth, false, std::nullopt);
                const DirectionConfusion in_tier = direction_confusion(est, truth, true, same);
                const DirectionConfusion across = direction_confusion(est, truth, true, cross);
                const bool ok = all.counts == row.expected && all.not_scored == (row.scored ? 0u : 1u) &&
                                in_tier.counts == all.counts && in_tier.not_scored == all.not_scored &&
                                across.counts == ConfusionMatrix{} && across.not_scored == 0;
                if (!ok) failed.push_back(row.name);
            }
        }
    }
    std::string detail = std::to_string(adjacency.size() + direction.size()) + " table rows, " +
                         std::to_string(checks) + " mark combinations, " + std::to_string(failed.size()) + " mismatches";
    for (const std::string& f : failed) detail += " [" + f + "]";
    return {failed.empty(), detail};
}

// 9 -------------------------------------------------------------------------
Outcome lambda_tuning() {
    SimConfig cfg;
    cfg.d_min = cfg.d_max = 10;
    cfg.seed = 9;
    const auto data = std::make_shared<const Dataset>(simulate_replicate(cfg, 0).data);
    const GaussianScorer scorer(data, simulate_replicate(cfg, 0).truth.knowledge);
    std::vector<std::size_t> counts;
    std::string detail = "edges over lambda {0.5,1,2,4,8}:";
    for (double lambda : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        counts.push_back(tges_edge_count(scorer, lambda));
        detail += " " + std::to_string(counts.back());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < counts.size(); ++i) monotone = monotone && counts[i] <= counts[i - 1];
    const std::size_t target = counts[3];
    const LambdaTuning tuned = tune_lambda(scorer, target);
    detail += "; target " + std::to_string(target) + " -> lambda " + fmt(tuned.lambda) + " with " +
              std::to_string(tuned.edges) + " edges";
    return {monotone && tuned.edges == target, detail};
}

// 10 ------------------------------------------------------------------------
Outcome local_k_consistency() {
    // Diamond 0 -> 1 -> 3, 0 -> 2 -> 3 over tiers {1, 2, 2, 3}.
    const Pdag dag = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const TieredKnowledge k({1, 2, 2, 3});
    GroundTruth gt = fixtures::make_truth(dag, k, 0.0);
    gt.weights(0, 1) = 0.8;
    gt.weights(0, 2) = 0.6;
    gt.weights(1, 3) = 0.7;
    gt.weights(2, 3) = 0.9;

    std::vector<Pdag> encoding;
    for (const Pdag& g : enumerate_dags(4)) {
        if (encodes(g, k)) encoding.push_back(g);
    }

    std::size_t hits = 0;
    std::array<std::size_t, 3> branch_checks{}, branch_failures{};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GaussianScorer scorer(fixtures::sample(gt, 100000, 1000 + seed), k);
        bool all_hold = true;
        for (const Pdag& g : encoding) {
            const Score before = scorer.total_score(g);
            for (Node x = 0; x < 4; ++x) {
                for (Node y = 0; y < 4; ++y) {
                    if (x == y || g.adjacent(x, y) || has_directed_path(g, y, x)) continue;
                    Pdag added = g;
                    added.add_directed(x, y);
                    const Score after = scorer.total_score(added);
                    int branch;
                    bool holds;
                    if (k.tier(x) > k.tier(y)) {
                        branch = 2;
                        holds = after < before;
                    } else if (!d_separated(dag, x, y, g.parents(y))) {
                        branch = 0;
                        holds = after > before;
                    } else {
                        branch = 1;
                        holds = after < before;
                    }
                    ++branch_checks[static_cast<std::size_t>(branch)];
                    if (!holds) {
                        ++branch_failures[static_cast<std::size_t>(branch)];
                        all_hold = false;
                    }
                }
            }
        }
        if (all_hold) ++hits;
    }
    std::string detail = "all checks hold in " + ratio(hits, 100) + " replications (need >= 95); failures per branch";
    for (std::size_t b = 0; b < 3; ++b) detail += " " + ratio(branch_failures[b], branch_checks[b]);
    const bool every_branch = branch_checks[0] > 0 && branch_checks[1] > 0 && branch_checks[2] > 0;
    return {hits >= 95 && every_branch, detail};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    set_warning_handler(nullptr);
    const std::vector<Criterion> criteria{
        {1, "tiered MPDAG closure", tiered_mpdag_closure},
        {2, "large-sample recovery of the tiered MPDAG", large_sample_recovery},
        {3, "agreement with the brute-force best class", oracle_equivalence},
        {4, "K-score equivalence", k_score_equivalence},
        {5, "STGES skeleton and v-structures", stges_skeleton_and_v_structures},
        {6, "sSHD ordering TGES < STGES < GES", sshd_ordering},
        {7, "adjacency recall and precision TGES >= GES", adjacency_medians},
        {8, "metric confusion tables", metric_tables},
        {9, "lambda monotonicity and tuning", lambda_tuning},
        {10, "local K-consistency", local_k_consistency},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " -- " << o.detail
                  << " (" << fmt(secs) << " s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
