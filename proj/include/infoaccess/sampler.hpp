#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "infoaccess/graph.hpp"

namespace infoaccess {

/// Uniform per-edge transmission probability, strictly inside (0, 1).
class TransmissionProbability {
public:
    explicit TransmissionProbability(double alpha);
    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Stateless live/dead coin for (seed, sample, edge). The edge is given by the
/// original ids of its endpoints, so coins survive relabelling and node removal.
/// Returns a value uniform in [0, 1).
double edge_coin(std::uint64_t seed, std::uint64_t sample, OriginalId a, OriginalId b) noexcept;

inline bool edge_is_live(double alpha, std::uint64_t seed, std::uint64_t sample, OriginalId a,
                         OriginalId b) noexcept {
    return edge_coin(seed, sample, a, b) < alpha;
}

/// Symmetric matrix of estimated access probabilities backed by integer
/// co-occurrence counters over `samples()` live-edge samples. The diagonal is 1.
class AccessEstimate {
public:
    AccessEstimate() = default;
    AccessEstimate(std::vector<OriginalId> labels, std::uint32_t samples);

    std::size_t size() const noexcept { return labels_.size(); }
    std::uint32_t samples() const noexcept { return samples_; }
    std::span<const OriginalId> labels() const noexcept { return labels_; }

    /// Number of samples in which i and j share a component (R on the diagonal).
    std::uint32_t count(NodeId i, NodeId j) const noexcept {
        return i == j ? samples_ : counters_[pair_index(i, j)];
    }
    double probability(NodeId i, NodeId j) const noexcept {
        return i == j ? 1.0 : static_cast<double>(counters_[pair_index(i, j)]) / samples_;
    }

    /// Packed strict upper triangle, row-major.
    std::span<const std::uint32_t> counters() const noexcept { return counters_; }
    std::span<std::uint32_t> counters() noexcept { return counters_; }

    std::size_t pair_index(NodeId i, NodeId j) const noexcept {
        if (i > j) std::swap(i, j);
        const std::size_t n = labels_.size();
        return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
    }

    friend bool operator==(const AccessEstimate&, const AccessEstimate&) = default;

private:
    std::vector<OriginalId> labels_;
    std::uint32_t samples_ = 0;
    std::vector<std::uint32_t> counters_;
};

struct SamplerOptions {
    /// 0 = one worker per hardware thread.
    unsigned workers = 0;
};

/// R coupled live-edge samples of a graph, each stored as a component labelling
/// with circular member lists so that components can be merged in place.
class SampleEnsemble {
public:
    const Graph& graph() const noexcept { return graph_; }
    double alpha() const noexcept { return alpha_; }
    std::uint32_t samples() const noexcept { return samples_; }
    std::uint64_t seed() const noexcept { return seed_; }
    unsigned workers() const noexcept { return workers_; }

    /// Representative of v's component in sample r.
    NodeId component(std::uint32_t r, NodeId v) const { return label_[offset(r) + v]; }
    std::uint32_t component_size(std::uint32_t r, NodeId v) const {
        return size_[offset(r) + component(r, v)];
    }
    std::vector<NodeId> component_members(std::uint32_t r, NodeId v) const;

    /// Inserts e into the underlying graph and merges components in every sample
    /// whose coin for e is live, incrementing the counters of newly joined pairs.
    /// Returns the number of samples in which a merge happened.
    std::size_t add_edge(AccessEstimate& estimate, EdgeKey e);

private:
    friend struct EnsembleBuilder;

    std::size_t offset(std::uint32_t r) const noexcept {
        return static_cast<std::size_t>(r) * graph_.node_count();
    }

    Graph graph_;
    double alpha_ = 0.5;
    std::uint32_t samples_ = 0;
    std::uint64_t seed_ = 0;
    unsigned workers_ = 1;
    std::vector<NodeId> label_;
    std::vector<NodeId> next_;
    std::vector<std::uint32_t> size_;
};

struct EnsembleBuild {
    SampleEnsemble ensemble;
    AccessEstimate estimate;
};

/// Builds R samples and their co-occurrence counters. Throws std::invalid_argument
/// when R is 0 or the graph is empty.
EnsembleBuild build_ensemble(Graph g, TransmissionProbability alpha, std::uint32_t samples,
                             std::uint64_t seed, SamplerOptions options = {});

/// Counters only; identical to `build_ensemble(...).estimate` but keeps no
/// per-sample state.
AccessEstimate estimate_access(const Graph& g, TransmissionProbability alpha,
                               std::uint32_t samples, std::uint64_t seed,
                               SamplerOptions options = {});

/// Throws std::invalid_argument for a self-loop or an edge already in the graph.
std::size_t add_edge_incremental(SampleEnsemble& ensemble, AccessEstimate& estimate, EdgeKey e);

struct StabilityReport {
    /// Largest per-pair spread (max - min over repetitions).
    double max_deviation = 0.0;
    /// Per-pair spread averaged over pairs.
    double mean_deviation = 0.0;
    /// |estimate_a - estimate_b| averaged over pairs and over all repetition pairs a < b.
    double mean_pairwise_difference = 0.0;
    std::size_t repetitions = 0;
};

/// Spread (max - min) of each pairwise estimate over `repetitions` runs seeded
/// base_seed, base_seed + 1, ...; reports the maximum and mean over pairs.
StabilityReport stability_check(const Graph& g, TransmissionProbability alpha,
                                std::uint32_t samples, std::size_t repetitions,
                                std::uint64_t base_seed, SamplerOptions options = {});

/// Same as stability_check but with explicit seeds (used to verify determinism).
StabilityReport stability_check_seeds(const Graph& g, TransmissionProbability alpha,
                                      std::uint32_t samples, std::span<const std::uint64_t> seeds,
                                      SamplerOptions options = {});

}  // namespace infoaccess
