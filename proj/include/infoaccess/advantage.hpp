#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "infoaccess/graph.hpp"
#include "infoaccess/sampler.hpp"

namespace infoaccess {

/// Anything exposing a symmetric access matrix with unit diagonal.
template <class A>
concept AccessMatrix = requires(const A& a, NodeId i, NodeId j) {
    { a.size() } -> std::convertible_to<std::size_t>;
    { a.probability(i, j) } -> std::convertible_to<double>;
};

/// Broadcast advantage: the minimum entry of each node's access signature.
template <AccessMatrix A>
std::vector<double> broadcast_all(const A& access) {
    const std::size_t n = access.size();
    if (n < 2) throw std::invalid_argument("broadcast needs at least two nodes");
    std::vector<double> out(n, 1.0);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = access.probability(i, j);
            out[i] = std::min(out[i], p);
            out[j] = std::min(out[j], p);
        }
    }
    return out;
}

/// Influence advantage: the mean of each signature, self entry (1) included.
template <AccessMatrix A>
std::vector<double> influence_all(const A& access) {
    const std::size_t n = access.size();
    std::vector<double> sum(n, 1.0);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = access.probability(i, j);
            sum[i] += p;
            sum[j] += p;
        }
    }
    for (double& s : sum) s /= static_cast<double>(n);
    return sum;
}

/// Access signature of `owner`: entry j is p(owner, j).
template <AccessMatrix A>
std::vector<double> signature(const A& access, NodeId owner) {
    std::vector<double> out(access.size());
    for (NodeId j = 0; j < access.size(); ++j) out[j] = access.probability(owner, j);
    return out;
}

struct Welfare {
    double value = 0.0;
    NodeId u = 0;
    NodeId v = 0;
};

/// Minimum pairwise access and the lexicographically smallest pair attaining it.
/// This is also the access diameter of the graph.
template <AccessMatrix A>
Welfare welfare(const A& access) {
    const std::size_t n = access.size();
    if (n < 2) throw std::invalid_argument("welfare needs at least two nodes");
    Welfare best{2.0, 0, 0};
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = access.probability(i, j);
            if (p < best.value) best = {p, i, j};
        }
    }
    return best;
}

/// Counter-based overload; same result as the generic version.
Welfare welfare(const AccessEstimate& estimate);

struct AdvantageVector {
    std::vector<double> broadcast;
    std::vector<double> influence;
    std::optional<std::vector<double>> cent_star;
    std::optional<std::vector<double>> max_pair_control;
};

template <AccessMatrix A>
AdvantageVector advantage_vector(const A& access) {
    return {broadcast_all(access), influence_all(access), std::nullopt, std::nullopt};
}

/// Control of one node over the access of all other pairs.
struct ControlResult {
    NodeId node = 0;
    /// Sum of clamped pair controls divided by C(n-1, 2).
    double cent_star = 0.0;
    double raw_sum = 0.0;
    double max_pair_control = 0.0;
    NodeId max_pair_j = 0;
    NodeId max_pair_k = 0;
    /// Smallest unclamped ratio (negative only through sampling noise).
    double min_raw_ratio = 0.0;
    std::size_t eligible_pairs = 0;
    std::size_t skipped_pairs = 0;
};

/// Combines access on G (`full`) with access on G minus `removed` (`without`,
/// indexed through `mapping` from G's node ids). Pairs with zero access in G
/// are skipped and contribute 0.
template <AccessMatrix Full, AccessMatrix Without>
ControlResult control_from(const Full& full, const Without& without,
                           std::span<const std::optional<NodeId>> mapping, NodeId removed) {
    const std::size_t n = full.size();
    if (n < 3) throw std::invalid_argument("control needs at least three nodes");
    ControlResult res;
    res.node = removed;
    res.min_raw_ratio = 1.0;
    bool have_max = false;
    for (NodeId j = 0; j < n; ++j) {
        if (j == removed) continue;
        for (NodeId k = j + 1; k < n; ++k) {
            if (k == removed) continue;
            ++res.eligible_pairs;
            const double p = full.probability(j, k);
            if (p <= 0.0) {
                ++res.skipped_pairs;
                continue;
            }
            const double q = without.probability(*mapping[j], *mapping[k]);
            const double raw = (p - q) / p;
            res.min_raw_ratio = std::min(res.min_raw_ratio, raw);
            const double clamped = std::clamp(raw, 0.0, 1.0);
            res.raw_sum += clamped;
            if (!have_max || clamped > res.max_pair_control) {
                res.max_pair_control = clamped;
                res.max_pair_j = j;
                res.max_pair_k = k;
                have_max = true;
            }
        }
    }
    res.cent_star = res.raw_sum / static_cast<double>(res.eligible_pairs);
    return res;
}

/// Monte Carlo control of node c. G minus c is sampled with the same seed; since
/// coins are keyed by original edge ids the two ensembles share every coin.
ControlResult access_centrality(const Graph& g, TransmissionProbability alpha,
                                std::uint32_t samples, std::uint64_t seed, NodeId c,
                                SamplerOptions options = {});

/// As above, reusing an estimate of G built with the same (alpha, samples, seed).
ControlResult access_centrality(const Graph& g, const AccessEstimate& full,
                                TransmissionProbability alpha, std::uint64_t seed, NodeId c,
                                SamplerOptions options = {});

/// Control of node c computed with the exact enumeration oracle on G and G minus c.
ControlResult exact_access_centrality(const Graph& g, TransmissionProbability alpha, NodeId c);

}  // namespace infoaccess
