#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "infoaccess/advantage.hpp"
#include "infoaccess/graph.hpp"
#include "infoaccess/parallel.hpp"

namespace infoaccess {

/// Absolute (max - min) and relative ((max - min) / min) advantage gap.
struct GapReport {
    std::string measure;
    double min = 0.0;
    double max = 0.0;
    NodeId argmin = 0;
    NodeId argmax = 0;
    double absolute = 0.0;
    /// Undefined when min == 0.
    std::optional<double> relative;
};

/// Throws std::invalid_argument for fewer than two values.
GapReport gap_report(std::span<const double> values, std::string measure);

struct DistributionSummary {
    std::size_t count = 0;
    double min = 0.0;
    double p1 = 0.0;
    double p5 = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    double p95 = 0.0;
    double p99 = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// Percentile q in [0, 1] of an ascending range, linear interpolation between
/// closest ranks (q = 0 is the minimum, q = 1 the maximum).
double percentile_sorted(std::span<const double> sorted, double q);

/// Throws std::invalid_argument on an empty input.
DistributionSummary distribution_summary(std::span<const double> values);

/// All off-diagonal access values p_ij, i < j, in packed order.
template <AccessMatrix A>
std::vector<double> access_distribution(const A& access) {
    const std::size_t n = access.size();
    std::vector<double> out;
    out.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) out.push_back(access.probability(i, j));
    }
    return out;
}

enum class SignatureMetric { L1, L2 };

struct SignatureDistanceOptions {
    enum class Mode { Auto, Exact, Sampled };
    Mode mode = Mode::Auto;
    /// Auto switches to sampling above this many nodes (all-pairs cost is O(n^3)).
    std::size_t exact_node_limit = 2000;
    std::size_t sampled_pairs = 200000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool keep_distances = false;
};

struct SignatureDistances {
    DistributionSummary summary;
    double max_distance = 0.0;
    NodeId max_i = 0;
    NodeId max_j = 0;
    bool sampled = false;
    std::size_t pairs = 0;
    std::vector<double> distances;
};

double signature_distance(std::span<const double> a, std::span<const double> b,
                          SignatureMetric metric);

/// Distances between access signatures over all unordered pairs (or a uniform
/// sample of pairs when sampling is selected).
template <AccessMatrix A>
SignatureDistances signature_distances(const A& access, SignatureMetric metric,
                                       const SignatureDistanceOptions& options = {}) {
    const std::size_t n = access.size();
    if (n < 2) throw std::invalid_argument("signature distances need at least two nodes");
    std::vector<double> dense(n * n);
    for (NodeId i = 0; i < n; ++i) {
        dense[i * n + i] = 1.0;
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = access.probability(i, j);
            dense[i * n + j] = p;
            dense[j * n + i] = p;
        }
    }
    auto row = [&](NodeId i) { return std::span<const double>(dense).subspan(i * n, n); };

    using Mode = SignatureDistanceOptions::Mode;
    const bool sampled = options.mode == Mode::Sampled ||
                         (options.mode == Mode::Auto && n > options.exact_node_limit);

    std::vector<std::pair<NodeId, NodeId>> pairs;
    if (sampled) {
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
        pairs.reserve(options.sampled_pairs);
        while (pairs.size() < options.sampled_pairs) {
            auto i = static_cast<NodeId>(pick(rng));
            auto j = static_cast<NodeId>(pick(rng));
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            pairs.emplace_back(i, j);
        }
    } else {
        pairs.reserve(n * (n - 1) / 2);
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        }
    }

    std::vector<double> distances(pairs.size());
    parallel_blocks(pairs.size(), resolve_workers(options.workers),
                    [&](std::size_t begin, std::size_t end, unsigned) {
                        for (std::size_t p = begin; p < end; ++p) {
                            distances[p] = signature_distance(row(pairs[p].first),
                                                              row(pairs[p].second), metric);
                        }
                    });

    SignatureDistances result;
    result.sampled = sampled;
    result.pairs = pairs.size();
    result.summary = distribution_summary(distances);
    std::size_t best = 0;
    for (std::size_t p = 1; p < distances.size(); ++p) {
        if (distances[p] > distances[best] ||
            (distances[p] == distances[best] && pairs[p] < pairs[best])) {
            best = p;
        }
    }
    result.max_distance = distances[best];
    result.max_i = pairs[best].first;
    result.max_j = pairs[best].second;
    if (options.keep_distances) result.distances = std::move(distances);
    return result;
}

/// Identifies the run a bundle belongs to.
struct MetricsConfig {
    double alpha = 0.0;
    std::uint32_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t nodes = 0;
    std::string input_hash;
    std::string heuristic;
    std::size_t budget = 0;
};

/// Everything reported at one evaluation point of a run.
struct MetricsBundle {
    MetricsConfig config;
    std::size_t k = 0;
    std::size_t edges = 0;
    double welfare = 0.0;
    OriginalId welfare_u = 0;
    OriginalId welfare_v = 0;
    double min_broadcast = 0.0;
    double min_influence = 0.0;
    GapReport broadcast_gap;
    GapReport influence_gap;
    DistributionSummary access;
    SignatureDistances signature;
    /// Original ids of the nodes named by the gap reports and the signature maximum.
    OriginalId broadcast_argmin = 0;
    OriginalId broadcast_argmax = 0;
    OriginalId influence_argmin = 0;
    OriginalId influence_argmax = 0;
    OriginalId signature_max_u = 0;
    OriginalId signature_max_v = 0;
};

template <AccessMatrix A>
MetricsBundle compute_metrics(const A& access, std::size_t edge_count, MetricsConfig config,
                              std::size_t k, const SignatureDistanceOptions& sig = {}) {
    const auto labels = access.labels();
    auto label = [&](NodeId v) { return labels[v]; };
    MetricsBundle m;
    m.config = std::move(config);
    m.k = k;
    m.edges = edge_count;
    const Welfare w = welfare(access);
    m.welfare = w.value;
    m.welfare_u = label(w.u);
    m.welfare_v = label(w.v);
    const auto broadcast = broadcast_all(access);
    const auto influence = influence_all(access);
    m.broadcast_gap = gap_report(broadcast, "broadcast");
    m.influence_gap = gap_report(influence, "influence");
    m.min_broadcast = m.broadcast_gap.min;
    m.min_influence = m.influence_gap.min;
    m.access = distribution_summary(access_distribution(access));
    m.signature = signature_distances(access, SignatureMetric::L1, sig);
    m.broadcast_argmin = label(m.broadcast_gap.argmin);
    m.broadcast_argmax = label(m.broadcast_gap.argmax);
    m.influence_argmin = label(m.influence_gap.argmin);
    m.influence_argmax = label(m.influence_gap.argmax);
    m.signature_max_u = label(m.signature.max_i);
    m.signature_max_v = label(m.signature.max_j);
    return m;
}

struct MetricDelta {
    std::string name;
    double before = 0.0;
    double after = 0.0;
    double change = 0.0;
    /// 100 * change / |before|; undefined when before == 0.
    std::optional<double> percent_change;
};

struct DeltaReport {
    std::vector<MetricDelta> entries;
    /// Metrics skipped because a side was undefined (e.g. relative gap with min 0).
    std::vector<std::string> undefined;

    const MetricDelta* find(std::string_view name) const;
};

/// Throws std::invalid_argument when the bundles come from different
/// graphs, alpha, or sample counts.
DeltaReport compare_runs(const MetricsBundle& before, const MetricsBundle& after);

}  // namespace infoaccess
