#include "infoaccess/exact_oracle.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "infoaccess/disjoint_set.hpp"

namespace infoaccess {

ExactAccess::ExactAccess(std::vector<OriginalId> labels) : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    values_.assign(n * (n - (n > 0 ? 1 : 0)) / 2, 0.0);
}

ExactAccess exact_access_oracle(const Graph& g, TransmissionProbability alpha,
                                std::size_t max_edges) {
    const std::size_t m = g.edge_count();
    if (m > max_edges) {
        throw std::invalid_argument(fmt::format(
            "exact oracle refuses {} edges (cap {}): 2^m enumeration", m, max_edges));
    }
    const std::size_t n = g.node_count();
    ExactAccess result(std::vector<OriginalId>(g.labels().begin(), g.labels().end()));
    const auto edges = g.edges();

    std::vector<double> weight_by_live(m + 1);
    for (std::size_t live = 0; live <= m; ++live) {
        weight_by_live[live] = std::pow(alpha.value(), static_cast<double>(live)) *
                               std::pow(1.0 - alpha.value(), static_cast<double>(m - live));
    }

    auto values = result.values();
    DisjointSet ds(n);
    std::vector<std::uint32_t> root(n);
    const std::uint64_t subsets = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        ds.reset(n);
        for (std::size_t e = 0; e < m; ++e) {
            if (mask >> e & 1U) ds.unite(edges[e].u, edges[e].v);
        }
        if (ds.set_count() == n) continue;
        const double w = weight_by_live[static_cast<std::size_t>(std::popcount(mask))];
        for (NodeId v = 0; v < n; ++v) root[v] = ds.find(v);
        std::size_t p = 0;
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = i + 1; j < n; ++j, ++p) {
                if (root[i] == root[j]) values[p] += w;
            }
        }
    }
    return result;
}

}  // namespace infoaccess
