#include "infoaccess/augmentation.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace infoaccess {

std::string_view to_string(HeuristicKind kind) noexcept {
    switch (kind) {
        case HeuristicKind::Random: return "rand";
        case HeuristicKind::BcChord: return "bc-chord";
        case HeuristicKind::BcOne: return "bc-one";
        case HeuristicKind::BcBoth: return "bc-both";
        case HeuristicKind::Influence: return "infl";
        case HeuristicKind::DiamChord: return "diam-chord";
        case HeuristicKind::DiamBoth: return "diam-both";
    }
    return "unknown";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name) noexcept {
    for (HeuristicKind kind : kAllHeuristics) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

bool adds_edge_pairs(HeuristicKind kind) noexcept {
    return kind == HeuristicKind::BcBoth || kind == HeuristicKind::DiamBoth;
}

bool targets_center(HeuristicKind kind) noexcept {
    return kind == HeuristicKind::BcOne || kind == HeuristicKind::BcBoth ||
           kind == HeuristicKind::Influence || kind == HeuristicKind::DiamBoth;
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed ^ 0x5eedf00dcafe1234ULL) {}

NodeId RandomStream::uniform_node(std::size_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return static_cast<NodeId>(dist(engine_));
}

bool RandomStream::flip() { return (engine_() >> 63) != 0; }

std::vector<NodeId> broadcast_order(std::span<const double> broadcast) {
    std::vector<NodeId> order(broadcast.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return broadcast[a] > broadcast[b]; });
    return order;
}

namespace {

const AccessEstimate& require_estimate(HeuristicKind kind, const SelectionContext& ctx) {
    if (ctx.estimate == nullptr) {
        throw std::logic_error(fmt::format("{} needs access estimates", to_string(kind)));
    }
    return *ctx.estimate;
}

}  // namespace

std::vector<Candidate> propose_edges(HeuristicKind kind, const SelectionContext& ctx) {
    const Graph& g = ctx.graph;
    switch (kind) {
        case HeuristicKind::Random: {
            const NodeId a = ctx.rng.uniform_node(g.node_count());
            const NodeId b = ctx.rng.uniform_node(g.node_count());
            return {{a, b}};
        }
        case HeuristicKind::BcChord: {
            const Welfare w = welfare(require_estimate(kind, ctx));
            return {{w.u, w.v}};
        }
        case HeuristicKind::BcOne: {
            // Both endpoints of the minimizing pair have broadcast equal to the
            // welfare, so the smaller-broadcast rule always ties to the lower id.
            const Welfare w = welfare(require_estimate(kind, ctx));
            return {{w.u, ctx.center}};
        }
        case HeuristicKind::BcBoth: {
            const Welfare w = welfare(require_estimate(kind, ctx));
            return {{w.u, ctx.center}, {w.v, ctx.center}};
        }
        case HeuristicKind::Influence: {
            const auto influence = influence_all(require_estimate(kind, ctx));
            const auto it = std::min_element(influence.begin(), influence.end());
            return {{static_cast<NodeId>(it - influence.begin()), ctx.center}};
        }
        case HeuristicKind::DiamChord: {
            const DiameterPair d = graph_diameter_pair(g);
            return {{d.u, d.v}};
        }
        case HeuristicKind::DiamBoth: {
            const DiameterPair d = graph_diameter_pair(g);
            return {{d.u, ctx.center}, {d.v, ctx.center}};
        }
    }
    return {};
}

std::optional<EdgeKey> resolve_center_collision(const Graph& g, NodeId u,
                                                std::span<const NodeId> order) {
    for (NodeId w : order) {
        if (w != u && !g.has_edge(u, w)) return EdgeKey::make(u, w);
    }
    return std::nullopt;
}

EdgeKey resolve_chord_collision(const Graph& g, NodeId a, NodeId b, RandomStream& rng) {
    const std::size_t n = g.node_count();
    if (g.is_complete()) throw std::invalid_argument("graph is complete; no legal edge");
    const std::size_t attempts = 64 * n + 64;
    for (std::size_t t = 0; t < attempts; ++t) {
        if (a != b && !g.has_edge(a, b)) return EdgeKey::make(a, b);
        NodeId keep = rng.flip() ? a : b;
        if (g.degree(keep) + 1 == n) keep = keep == a ? b : a;
        if (g.degree(keep) + 1 == n) keep = rng.uniform_node(n);
        a = keep;
        b = rng.uniform_node(n);
    }
    // Practically unreachable; fall back to the first non-edge touching a.
    for (NodeId w = 0; w < n; ++w) {
        if (w != a && !g.has_edge(a, w)) return EdgeKey::make(a, w);
    }
    for (NodeId x = 0; x < n; ++x) {
        for (NodeId y = x + 1; y < n; ++y) {
            if (!g.has_edge(x, y)) return {x, y};
        }
    }
    throw std::logic_error("no legal edge in a non-complete graph");
}

std::optional<EdgeKey> resolve_collision(HeuristicKind kind, const Candidate& candidate,
                                         const SelectionContext& ctx) {
    const Graph& g = ctx.graph;
    if (candidate.u != candidate.v && !g.has_edge(candidate.u, candidate.v)) {
        return EdgeKey::make(candidate.u, candidate.v);
    }
    if (targets_center(kind)) {
        return resolve_center_collision(g, candidate.u, ctx.broadcast_order);
    }
    if (g.is_complete()) return std::nullopt;
    return resolve_chord_collision(g, candidate.u, candidate.v, ctx.rng);
}

std::size_t InterventionTrace::edges_added() const noexcept {
    std::size_t total = 0;
    for (const auto& s : steps) total += s.edges.size();
    return total;
}

AugmentationResult run_augmentation(Graph g, HeuristicKind kind, std::size_t budget,
                                    TransmissionProbability alpha, std::uint32_t samples,
                                    std::uint64_t seed, AugmentationOptions options) {
    if (adds_edge_pairs(kind) && budget % 2 != 0) {
        throw std::invalid_argument(
            fmt::format("{} adds edges in pairs; budget k must be even (got {})",
                        to_string(kind), budget));
    }
    if (!is_connected(g)) throw std::invalid_argument("graph must be connected");
    if (g.node_count() < 2 || g.is_complete()) {
        throw std::invalid_argument("graph is already complete; nothing to add");
    }

    EnsembleBuild built = build_ensemble(std::move(g), alpha, samples, seed, options.sampler);
    SampleEnsemble& ensemble = built.ensemble;
    AccessEstimate& estimate = built.estimate;

    const auto initial_broadcast = broadcast_all(estimate);
    const auto order = broadcast_order(initial_broadcast);
    const NodeId center = order.front();
    RandomStream rng(seed);

    InterventionTrace trace;
    trace.heuristic = kind;
    trace.budget = budget;
    if (targets_center(kind)) trace.center = center;
    {
        const Welfare w = welfare(estimate);
        const auto infl = influence_all(estimate);
        trace.initial_welfare = w.value;
        trace.initial_min_broadcast =
            *std::min_element(initial_broadcast.begin(), initial_broadcast.end());
        trace.initial_min_influence = *std::min_element(infl.begin(), infl.end());
    }
    if (options.observer) options.observer({0, 0, ensemble, estimate});

    const std::size_t per_step = adds_edge_pairs(kind) ? 2 : 1;
    std::size_t remaining = budget;
    std::size_t step = 0;
    std::size_t added = 0;
    while (remaining >= per_step) {
        if (ensemble.graph().is_complete()) {
            trace.events.push_back({step, "complete", "graph became complete"});
            break;
        }
        ++step;
        remaining -= per_step;
        const SelectionContext ctx{ensemble.graph(), &estimate, center, order, rng};
        const auto candidates = propose_edges(kind, ctx);

        TraceStep record;
        record.step = step;
        for (const Candidate& c : candidates) {
            const SelectionContext now{ensemble.graph(), &estimate, center, order, rng};
            const auto edge = resolve_collision(kind, c, now);
            if (!edge) {
                trace.events.push_back(
                    {step, "skipped",
                     fmt::format("node {} is adjacent to every other node",
                                 ensemble.graph().label(c.u))});
                continue;
            }
            ensemble.add_edge(estimate, *edge);
            record.edges.push_back(*edge);
            ++added;
        }
        const Welfare w = welfare(estimate);
        const auto infl = influence_all(estimate);
        record.welfare = w.value;
        record.min_broadcast = w.value;
        record.min_influence = *std::min_element(infl.begin(), infl.end());
        trace.steps.push_back(std::move(record));
        if (options.observer) options.observer({step, added, ensemble, estimate});
    }

    AugmentationResult result{std::move(trace), ensemble.graph(), std::move(estimate)};
    return result;
}

}  // namespace infoaccess
