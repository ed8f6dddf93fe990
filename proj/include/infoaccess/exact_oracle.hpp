#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "infoaccess/graph.hpp"
#include "infoaccess/sampler.hpp"

namespace infoaccess {

/// Exact pairwise access probabilities, packed like AccessEstimate.
class ExactAccess {
public:
    ExactAccess() = default;
    explicit ExactAccess(std::vector<OriginalId> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const OriginalId> labels() const noexcept { return labels_; }

    double probability(NodeId i, NodeId j) const noexcept {
        return i == j ? 1.0 : values_[pair_index(i, j)];
    }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    std::size_t pair_index(NodeId i, NodeId j) const noexcept {
        if (i > j) std::swap(i, j);
        const std::size_t n = labels_.size();
        return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
    }

private:
    std::vector<OriginalId> labels_;
    std::vector<double> values_;
};

inline constexpr std::size_t kDefaultOracleEdgeCap = 20;

/// Sums, over all 2^m live-edge subsets, the subset probability times the
/// indicator that i and j are connected. Throws std::invalid_argument when the
/// graph has more than `max_edges` edges.
ExactAccess exact_access_oracle(const Graph& g, TransmissionProbability alpha,
                                std::size_t max_edges = kDefaultOracleEdgeCap);

}  // namespace infoaccess
