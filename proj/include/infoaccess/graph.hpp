#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace infoaccess {

/// Dense node index, 0..n-1. Dense order always follows original-id order.
using NodeId = std::uint32_t;

/// Identifier as it appears in the input file.
using OriginalId = std::uint64_t;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Unordered node pair in canonical order (u < v).
struct EdgeKey {
    NodeId u = 0;
    NodeId v = 0;

    /// Canonicalizes (a, b); throws std::invalid_argument on a self-loop.
    static EdgeKey make(NodeId a, NodeId b);

    std::uint64_t packed() const noexcept { return (std::uint64_t{u} << 32) | v; }

    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Simple undirected graph with sorted adjacency lists.
///
/// Nodes carry their original ids (`label(i)`); labels are strictly increasing in
/// the dense index, so lexicographic order on dense ids equals original-id order.
class Graph {
public:
    Graph() = default;

    /// Graph with nodes labelled by `labels` (must be strictly increasing) and no edges.
    explicit Graph(std::vector<OriginalId> labels);

    /// Graph on nodes 0..n-1 labelled by their own index.
    static Graph with_nodes(std::size_t n);

    /// Convenience for tests and fixtures: nodes 0..n-1, edges given as index pairs.
    static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
    std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

    bool has_edge(NodeId a, NodeId b) const;
    bool has_edge(const EdgeKey& e) const { return has_edge(e.u, e.v); }

    /// Inserts an edge; returns false (and changes nothing) for duplicates.
    /// Throws std::invalid_argument for self-loops or out-of-range endpoints.
    bool add_edge(NodeId a, NodeId b);

    /// All edges in canonical lexicographic order.
    std::vector<EdgeKey> edges() const;

    OriginalId label(NodeId v) const { return labels_.at(v); }
    std::span<const OriginalId> labels() const noexcept { return labels_; }
    std::optional<NodeId> find_node(OriginalId original) const;

    bool is_complete() const noexcept;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<OriginalId> labels_;
    std::unordered_set<std::uint64_t> edge_set_;
    std::size_t edge_count_ = 0;
};

/// Lines dropped while reading an edge list.
struct LoadWarnings {
    std::size_t duplicate_edges = 0;
    std::size_t self_loops = 0;
};

/// Reads a whitespace-separated edge list. Lines whose first non-blank character
/// is '#' or '%' are comments; tokens past the second on a line are ignored.
Graph load_edge_list(std::istream& in, LoadWarnings* warnings = nullptr);
Graph load_edge_list_file(const std::string& path, LoadWarnings* warnings = nullptr);

/// Writes "u v" lines over original ids in canonical order.
void write_edge_list(std::ostream& out, const Graph& g);

/// Component index per node (components numbered by smallest member) and count.
struct Components {
    std::vector<std::uint32_t> component_of;
    std::size_t count = 0;
};
Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Induced subgraph on the largest component; ties go to the component holding
/// the smallest original id.
Graph largest_connected_component(const Graph& g);

/// Induced subgraph on all nodes except `removed`, relabelled densely.
/// `mapping[v]` receives the new index of old node v (or nullopt for `removed`).
Graph remove_node(const Graph& g, NodeId removed,
                  std::vector<std::optional<NodeId>>* mapping = nullptr);

inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// Hop distances from `source`; unreachable nodes get kUnreachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

struct DiameterPair {
    NodeId u = 0;
    NodeId v = 0;
    std::uint32_t distance = 0;
};

/// Pair at maximum shortest-path distance, lexicographically smallest among ties.
/// Throws std::invalid_argument when g is disconnected or has fewer than 2 nodes.
DiameterPair graph_diameter_pair(const Graph& g);

}  // namespace infoaccess
