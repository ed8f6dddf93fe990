#include "infoaccess/advantage.hpp"

#include "infoaccess/exact_oracle.hpp"

namespace infoaccess {

Welfare welfare(const AccessEstimate& estimate) {
    const std::size_t n = estimate.size();
    if (n < 2) throw std::invalid_argument("welfare needs at least two nodes");
    const auto counters = estimate.counters();
    std::size_t best = 0;
    for (std::size_t p = 1; p < counters.size(); ++p) {
        if (counters[p] < counters[best]) best = p;
    }
    // Packed row-major order is lexicographic, so the first minimum is the answer.
    NodeId i = 0;
    std::size_t row_start = 0;
    while (row_start + (n - i - 1) <= best) {
        row_start += n - i - 1;
        ++i;
    }
    const auto j = static_cast<NodeId>(i + 1 + (best - row_start));
    return {estimate.probability(i, j), i, j};
}

ControlResult access_centrality(const Graph& g, const AccessEstimate& full,
                                TransmissionProbability alpha, std::uint64_t seed, NodeId c,
                                SamplerOptions options) {
    if (g.node_count() < 3) throw std::invalid_argument("control needs at least three nodes");
    std::vector<std::optional<NodeId>> mapping;
    const Graph without = remove_node(g, c, &mapping);
    const AccessEstimate reduced = estimate_access(without, alpha, full.samples(), seed, options);
    return control_from(full, reduced, mapping, c);
}

ControlResult access_centrality(const Graph& g, TransmissionProbability alpha,
                                std::uint32_t samples, std::uint64_t seed, NodeId c,
                                SamplerOptions options) {
    if (g.node_count() < 3) throw std::invalid_argument("control needs at least three nodes");
    const AccessEstimate full = estimate_access(g, alpha, samples, seed, options);
    return access_centrality(g, full, alpha, seed, c, options);
}

ControlResult exact_access_centrality(const Graph& g, TransmissionProbability alpha, NodeId c) {
    if (g.node_count() < 3) throw std::invalid_argument("control needs at least three nodes");
    std::vector<std::optional<NodeId>> mapping;
    const Graph without = remove_node(g, c, &mapping);
    const ExactAccess full = exact_access_oracle(g, alpha);
    const ExactAccess reduced = exact_access_oracle(without, alpha);
    return control_from(full, reduced, mapping, c);
}

}  // namespace infoaccess
