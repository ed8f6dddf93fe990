#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infoaccess/advantage.hpp"
#include "infoaccess/graph.hpp"
#include "infoaccess/sampler.hpp"

namespace infoaccess {

enum class HeuristicKind { Random, BcChord, BcOne, BcBoth, Influence, DiamChord, DiamBoth };

inline constexpr HeuristicKind kAllHeuristics[] = {
    HeuristicKind::Random,    HeuristicKind::BcChord,   HeuristicKind::BcOne,
    HeuristicKind::BcBoth,    HeuristicKind::Influence, HeuristicKind::DiamChord,
    HeuristicKind::DiamBoth};

std::string_view to_string(HeuristicKind kind) noexcept;
std::optional<HeuristicKind> parse_heuristic(std::string_view name) noexcept;

/// *-both strategies add two edges per step.
bool adds_edge_pairs(HeuristicKind kind) noexcept;
/// Strategies whose new edges end at the center (collision rule: broadcast order).
bool targets_center(HeuristicKind kind) noexcept;

/// Seeded stream for random endpoints and collision replacement.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);
    NodeId uniform_node(std::size_t n);
    bool flip();

private:
    std::mt19937_64 engine_;
};

/// Node with maximum broadcast; ties go to the lowest id.
template <AccessMatrix A>
NodeId select_center(const A& access) {
    const auto broadcast = broadcast_all(access);
    NodeId best = 0;
    for (NodeId i = 1; i < broadcast.size(); ++i) {
        if (broadcast[i] > broadcast[best]) best = i;
    }
    return best;
}

/// Nodes by decreasing broadcast, ties by increasing id. Starts with the center.
std::vector<NodeId> broadcast_order(std::span<const double> broadcast);

/// A proposed edge before collision handling. For center-targeting strategies
/// `u` is the node being connected and `v` the center.
struct Candidate {
    NodeId u = 0;
    NodeId v = 0;
};

struct SelectionContext {
    const Graph& graph;
    /// May be null for strategies that do not read access estimates (diam-*, rand).
    const AccessEstimate* estimate;
    NodeId center;
    std::span<const NodeId> broadcast_order;
    RandomStream& rng;
};

/// Raw candidates for one step of `kind` (two for *-both, otherwise one).
std::vector<Candidate> propose_edges(HeuristicKind kind, const SelectionContext& ctx);

/// Center strategies: walks the broadcast order from the center to the first
/// node that is neither u nor adjacent to u. nullopt when u is adjacent to all.
std::optional<EdgeKey> resolve_center_collision(const Graph& g, NodeId u,
                                                std::span<const NodeId> order);

/// Chord/random strategies: replaces a uniformly chosen endpoint with a uniform
/// node until the pair is a legal new edge. Requires a non-complete graph.
EdgeKey resolve_chord_collision(const Graph& g, NodeId a, NodeId b, RandomStream& rng);

/// Returns the candidate itself when legal, otherwise applies the collision rule
/// for `kind`. nullopt means the step must skip this candidate.
std::optional<EdgeKey> resolve_collision(HeuristicKind kind, const Candidate& candidate,
                                         const SelectionContext& ctx);

struct TraceStep {
    std::size_t step = 0;
    std::vector<EdgeKey> edges;
    double welfare = 0.0;
    double min_broadcast = 0.0;
    double min_influence = 0.0;
};

struct TraceEvent {
    std::size_t step = 0;
    std::string kind;
    std::string detail;
};

struct InterventionTrace {
    HeuristicKind heuristic = HeuristicKind::Random;
    std::size_t budget = 0;
    std::optional<NodeId> center;
    double initial_welfare = 0.0;
    double initial_min_broadcast = 0.0;
    double initial_min_influence = 0.0;
    std::vector<TraceStep> steps;
    std::vector<TraceEvent> events;

    std::size_t edges_added() const noexcept;
    double final_welfare() const noexcept {
        return steps.empty() ? initial_welfare : steps.back().welfare;
    }
};

/// Progress view handed to an observer after the initial build (edges_added = 0)
/// and after every step.
struct AugmentationState {
    std::size_t step;
    std::size_t edges_added;
    const SampleEnsemble& ensemble;
    const AccessEstimate& estimate;
};

struct AugmentationOptions {
    SamplerOptions sampler;
    std::function<void(const AugmentationState&)> observer;
};

struct AugmentationResult {
    InterventionTrace trace;
    Graph graph;
    AccessEstimate estimate;
};

/// Greedy MaxWelfare augmentation with budget k. Builds the ensemble once and
/// refreshes estimates only through incremental edge insertion.
/// Throws std::invalid_argument for odd k with a *-both strategy, a disconnected
/// graph, or a graph that is already complete.
AugmentationResult run_augmentation(Graph g, HeuristicKind kind, std::size_t budget,
                                    TransmissionProbability alpha, std::uint32_t samples,
                                    std::uint64_t seed, AugmentationOptions options = {});

}  // namespace infoaccess
