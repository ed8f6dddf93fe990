#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "infoaccess/evaluation.hpp"
#include "infoaccess/exact_oracle.hpp"

using namespace infoaccess;

TEST(Gap, PathBroadcast) {
    const auto b = broadcast_all(exact_access_oracle(fixtures::path(3), TransmissionProbability(0.5)));
    const GapReport g = gap_report(b, "broadcast");
    EXPECT_NEAR(g.absolute, 0.25, 1e-12);
    ASSERT_TRUE(g.relative.has_value());
    EXPECT_NEAR(*g.relative, 1.0, 1e-12);
    EXPECT_EQ(g.argmax, 1u);
    EXPECT_EQ(g.argmin, 0u);
}

TEST(Gap, SymmetricGraphHasNoGap) {
    const auto b = broadcast_all(exact_access_oracle(fixtures::triangle(), TransmissionProbability(0.5)));
    const GapReport g = gap_report(b, "broadcast");
    EXPECT_EQ(g.absolute, 0.0);
    EXPECT_EQ(g.relative, 0.0);
}

TEST(Gap, ZeroMinimumLeavesRelativeUndefined) {
    const std::vector<double> v{0.0, 0.5};
    const GapReport g = gap_report(v, "x");
    EXPECT_EQ(g.absolute, 0.5);
    EXPECT_FALSE(g.relative.has_value());
}

TEST(Gap, MinimumBroadcastEqualsWelfare) {
    const Graph g = fixtures::random_connected(25, 40, 3);
    const auto est = estimate_access(g, TransmissionProbability(0.35), 800, 1);
    EXPECT_EQ(gap_report(broadcast_all(est), "broadcast").min, welfare(est).value);
}

TEST(Summary, SmallSet) {
    const std::vector<double> v{0.3, 0.1, 0.2};
    const auto s = distribution_summary(v);
    EXPECT_DOUBLE_EQ(s.p50, 0.2);
    EXPECT_DOUBLE_EQ(s.min, 0.1);
    EXPECT_DOUBLE_EQ(s.max, 0.3);
    EXPECT_EQ(s.count, 3u);
}

TEST(Summary, ConstantMultiset) {
    const std::vector<double> v(17, 0.42);
    const auto s = distribution_summary(v);
    for (double x : {s.min, s.p1, s.p5, s.p25, s.p50, s.p75, s.p95, s.p99, s.max, s.mean}) {
        EXPECT_DOUBLE_EQ(x, 0.42);
    }
}

TEST(Summary, LinearInterpolation) {
    std::vector<double> v;
    for (int i = 0; i <= 100; ++i) v.push_back(i / 100.0);
    EXPECT_NEAR(distribution_summary(v).p25, 0.25, 1e-12);
    const std::vector<double> two{0.0, 1.0};
    EXPECT_NEAR(percentile_sorted(two, 0.3), 0.3, 1e-12);
}

TEST(Summary, PermutationInvariant) {
    std::mt19937_64 rng(3);
    std::vector<double> v(200);
    for (double& x : v) x = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto a = distribution_summary(v);
    std::shuffle(v.begin(), v.end(), rng);
    const auto b = distribution_summary(v);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.p25, b.p25);
    EXPECT_EQ(a.p99, b.p99);
}

TEST(Summary, EmptyIsAnError) {
    EXPECT_THROW(distribution_summary(std::vector<double>{}), std::invalid_argument);
}

TEST(Signatures, TriangleDistances) {
    const std::vector<double> a{1.0, 0.625, 0.625};
    const std::vector<double> b{0.625, 1.0, 0.625};
    EXPECT_NEAR(signature_distance(a, b, SignatureMetric::L1), 0.75, 1e-12);
    EXPECT_NEAR(signature_distance(a, b, SignatureMetric::L2), std::sqrt(2 * 0.375 * 0.375), 1e-12);
    EXPECT_NEAR(signature_distance(a, b, SignatureMetric::L2), 0.5303, 1e-4);
}

TEST(Signatures, PairTransitiveGraphHasEqualDistances) {
    const auto k = exact_access_oracle(fixtures::complete(5), TransmissionProbability(0.4));
    SignatureDistanceOptions o;
    o.keep_distances = true;
    const auto d = signature_distances(k, SignatureMetric::L1, o);
    EXPECT_EQ(d.pairs, 10u);
    for (double x : d.distances) EXPECT_NEAR(x, d.distances.front(), 1e-12);
}

TEST(Signatures, CycleDistancesDependOnlyOnHopDistance) {
    const auto ex = exact_access_oracle(fixtures::cycle(6), TransmissionProbability(0.5));
    auto dist = [&](NodeId i, NodeId j) {
        return signature_distance(signature(ex, i), signature(ex, j), SignatureMetric::L1);
    };
    for (NodeId i = 0; i < 6; ++i) {
        EXPECT_NEAR(dist(i, (i + 1) % 6), dist(0, 1), 1e-12);
        EXPECT_NEAR(dist(i, (i + 3) % 6), dist(0, 3), 1e-12);
    }
    EXPECT_GT(std::abs(dist(0, 1) - dist(0, 3)), 1e-3);
}

TEST(Signatures, MetricProperties) {
    const Graph g = fixtures::random_connected(12, 20, 8);
    const auto est = estimate_access(g, TransmissionProbability(0.4), 600, 2);
    for (NodeId i = 0; i < 12; ++i) {
        const auto si = signature(est, i);
        EXPECT_EQ(signature_distance(si, si, SignatureMetric::L1), 0.0);
        for (NodeId j = 0; j < 12; ++j) {
            const auto sj = signature(est, j);
            const double l1 = signature_distance(si, sj, SignatureMetric::L1);
            const double l2 = signature_distance(si, sj, SignatureMetric::L2);
            EXPECT_EQ(l1, signature_distance(sj, si, SignatureMetric::L1));
            EXPECT_GE(l1 + 1e-15, l2);
        }
    }
}

TEST(Signatures, SampledModeIsSeededAndWorkerIndependent) {
    const Graph g = fixtures::random_connected(30, 60, 1);
    const auto est = estimate_access(g, TransmissionProbability(0.3), 300, 4);
    SignatureDistanceOptions o;
    o.mode = SignatureDistanceOptions::Mode::Sampled;
    o.sampled_pairs = 500;
    o.seed = 9;
    o.workers = 1;
    const auto a = signature_distances(est, SignatureMetric::L1, o);
    o.workers = 4;
    const auto b = signature_distances(est, SignatureMetric::L1, o);
    EXPECT_TRUE(a.sampled);
    EXPECT_EQ(a.pairs, 500u);
    EXPECT_EQ(a.summary.mean, b.summary.mean);
    EXPECT_EQ(a.max_distance, b.max_distance);
}

TEST(Signatures, AutoModeSwitchesAboveLimit) {
    const Graph g = fixtures::random_connected(20, 30, 1);
    const auto est = estimate_access(g, TransmissionProbability(0.3), 100, 4);
    SignatureDistanceOptions o;
    o.exact_node_limit = 10;
    o.sampled_pairs = 50;
    EXPECT_TRUE(signature_distances(est, SignatureMetric::L1, o).sampled);
    o.exact_node_limit = 20;
    EXPECT_FALSE(signature_distances(est, SignatureMetric::L1, o).sampled);
}

namespace {

MetricsBundle bundle(double welfare, double rel_gap) {
    MetricsBundle m;
    m.config.alpha = 0.4;
    m.config.samples = 100;
    m.config.nodes = 10;
    m.config.input_hash = "abc";
    m.welfare = welfare;
    m.broadcast_gap.min = 0.1;
    m.broadcast_gap.relative = rel_gap;
    m.influence_gap.relative = 1.0;
    return m;
}

}  // namespace

TEST(Compare, IdenticalBundlesHaveZeroDeltas) {
    const Graph g = fixtures::random_connected(10, 15, 2);
    const auto est = estimate_access(g, TransmissionProbability(0.4), 300, 4);
    MetricsConfig conf;
    conf.alpha = 0.4;
    conf.samples = 300;
    conf.nodes = 10;
    const MetricsBundle m = compute_metrics(est, g.edge_count(), conf, 0);
    const DeltaReport d = compare_runs(m, m);
    EXPECT_FALSE(d.entries.empty());
    for (const MetricDelta& e : d.entries) EXPECT_EQ(e.change, 0.0) << e.name;
}

TEST(Compare, WelfareIncrease) {
    const DeltaReport d = compare_runs(bundle(0.1, 2.0), bundle(0.8, 0.3));
    const MetricDelta* w = d.find("welfare");
    ASSERT_NE(w, nullptr);
    EXPECT_NEAR(w->change, 0.7, 1e-12);
    const MetricDelta* r = d.find("broadcast_gap.relative");
    ASSERT_NE(r, nullptr);
    ASSERT_TRUE(r->percent_change.has_value());
    EXPECT_NEAR(*r->percent_change, -85.0, 1e-9);
}

TEST(Compare, UndefinedSidesAreListed) {
    MetricsBundle a = bundle(0.1, 2.0);
    a.broadcast_gap.relative.reset();
    const DeltaReport d = compare_runs(a, bundle(0.2, 1.0));
    EXPECT_EQ(d.find("broadcast_gap.relative"), nullptr);
    EXPECT_NE(std::find(d.undefined.begin(), d.undefined.end(), "broadcast_gap.relative"),
              d.undefined.end());
}

TEST(Compare, MismatchedConfigsAreRejected) {
    MetricsBundle a = bundle(0.1, 2.0);
    MetricsBundle b = bundle(0.2, 1.0);
    b.config.alpha = 0.5;
    EXPECT_THROW(compare_runs(a, b), std::invalid_argument);
    b = bundle(0.2, 1.0);
    b.config.input_hash = "other";
    EXPECT_THROW(compare_runs(a, b), std::invalid_argument);
}
