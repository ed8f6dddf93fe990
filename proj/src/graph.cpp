#include "infoaccess/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

namespace infoaccess {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

EdgeKey EdgeKey::make(NodeId a, NodeId b) {
    if (a == b) {
        throw std::invalid_argument(fmt::format("self-loop on node {}", a));
    }
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

Graph::Graph(std::vector<OriginalId> labels)
    : adjacency_(labels.size()), labels_(std::move(labels)) {
    if (!std::is_sorted(labels_.begin(), labels_.end()) ||
        std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
        throw std::invalid_argument("node labels must be strictly increasing");
    }
}

Graph Graph::with_nodes(std::size_t n) {
    std::vector<OriginalId> labels(n);
    std::iota(labels.begin(), labels.end(), OriginalId{0});
    return Graph(std::move(labels));
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
    Graph g = with_nodes(n);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    if (a == b || a >= node_count() || b >= node_count()) return false;
    return edge_set_.contains(EdgeKey::make(a, b).packed());
}

bool Graph::add_edge(NodeId a, NodeId b) {
    if (a >= node_count() || b >= node_count()) {
        throw std::invalid_argument(
            fmt::format("edge ({}, {}) out of range for {} nodes", a, b, node_count()));
    }
    const EdgeKey key = EdgeKey::make(a, b);
    if (!edge_set_.insert(key.packed()).second) return false;
    auto insert_sorted = [](std::vector<NodeId>& list, NodeId x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    ++edge_count_;
    return true;
}

std::vector<EdgeKey> Graph::edges() const {
    std::vector<EdgeKey> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (u < v) out.push_back({u, v});
        }
    }
    return out;
}

std::optional<NodeId> Graph::find_node(OriginalId original) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), original);
    if (it == labels_.end() || *it != original) return std::nullopt;
    return static_cast<NodeId>(it - labels_.begin());
}

bool Graph::is_complete() const noexcept {
    const std::size_t n = node_count();
    return edge_count_ == n * (n - (n > 0 ? 1 : 0)) / 2;
}

namespace {

bool parse_id(std::string_view token, OriginalId& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string_view next_token(std::string_view& rest) {
    constexpr std::string_view ws = " \t\r\v\f";
    const auto begin = rest.find_first_not_of(ws);
    if (begin == std::string_view::npos) {
        rest = {};
        return {};
    }
    rest.remove_prefix(begin);
    const auto end = std::min(rest.find_first_of(ws), rest.size());
    std::string_view token = rest.substr(0, end);
    rest.remove_prefix(end);
    return token;
}

}  // namespace

Graph load_edge_list(std::istream& in, LoadWarnings* warnings) {
    LoadWarnings counts;
    std::vector<std::pair<OriginalId, OriginalId>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        std::string_view first = next_token(rest);
        if (first.empty() || first.front() == '#' || first.front() == '%') continue;
        std::string_view second = next_token(rest);
        if (second.empty()) {
            throw ParseError(line_no, "expected two node ids");
        }
        OriginalId a = 0;
        OriginalId b = 0;
        if (!parse_id(first, a)) {
            throw ParseError(line_no, fmt::format("malformed node id '{}'", first));
        }
        if (!parse_id(second, b)) {
            throw ParseError(line_no, fmt::format("malformed node id '{}'", second));
        }
        raw.emplace_back(a, b);
    }

    std::vector<OriginalId> labels;
    labels.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
        labels.push_back(a);
        labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty()) {
        throw std::runtime_error("edge list contains no nodes");
    }

    Graph g(std::move(labels));
    for (const auto& [a, b] : raw) {
        if (a == b) {
            ++counts.self_loops;
            continue;
        }
        if (!g.add_edge(*g.find_node(a), *g.find_node(b))) ++counts.duplicate_edges;
    }
    if (warnings) *warnings = counts;
    return g;
}

Graph load_edge_list_file(const std::string& path, LoadWarnings* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
    return load_edge_list(in, warnings);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const EdgeKey& e : g.edges()) {
        out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
    }
}

Components connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    Components result;
    result.component_of.assign(n, UINT32_MAX);
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (result.component_of[s] != UINT32_MAX) continue;
        const auto id = static_cast<std::uint32_t>(result.count++);
        result.component_of[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v)) {
                if (result.component_of[w] == UINT32_MAX) {
                    result.component_of[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return result;
}

bool is_connected(const Graph& g) {
    return g.node_count() > 0 && connected_components(g).count == 1;
}

namespace {

Graph induced_subgraph(const Graph& g, const std::vector<bool>& keep,
                       std::vector<std::optional<NodeId>>* mapping) {
    const std::size_t n = g.node_count();
    std::vector<std::optional<NodeId>> index(n);
    std::vector<OriginalId> labels;
    for (NodeId v = 0; v < n; ++v) {
        if (keep[v]) {
            index[v] = static_cast<NodeId>(labels.size());
            labels.push_back(g.label(v));
        }
    }
    Graph sub(std::move(labels));
    for (const EdgeKey& e : g.edges()) {
        if (index[e.u] && index[e.v]) sub.add_edge(*index[e.u], *index[e.v]);
    }
    if (mapping) *mapping = std::move(index);
    return sub;
}

}  // namespace

Graph largest_connected_component(const Graph& g) {
    if (g.node_count() == 0) throw std::invalid_argument("graph is empty");
    const Components cc = connected_components(g);
    std::vector<std::size_t> sizes(cc.count, 0);
    for (auto c : cc.component_of) ++sizes[c];
    // Components are numbered by smallest member, so the first maximum wins ties.
    const auto best = static_cast<std::uint32_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<bool> keep(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) keep[v] = cc.component_of[v] == best;
    return induced_subgraph(g, keep, nullptr);
}

Graph remove_node(const Graph& g, NodeId removed, std::vector<std::optional<NodeId>>* mapping) {
    if (removed >= g.node_count()) throw std::invalid_argument("node out of range");
    std::vector<bool> keep(g.node_count(), true);
    keep[removed] = false;
    return induced_subgraph(g, keep, mapping);
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
    std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
    std::vector<NodeId> frontier{source};
    dist.at(source) = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const NodeId v = frontier[head];
        for (NodeId w : g.neighbors(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

DiameterPair graph_diameter_pair(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw std::invalid_argument("diameter needs at least two nodes");
    DiameterPair best;
    bool found = false;
    for (NodeId u = 0; u < n; ++u) {
        const auto dist = bfs_distances(g, u);
        for (NodeId v = u + 1; v < n; ++v) {
            if (dist[v] == kUnreachable) {
                throw std::invalid_argument("graph is disconnected; take the LCC first");
            }
            if (!found || dist[v] > best.distance) {
                best = {u, v, dist[v]};
                found = true;
            }
        }
    }
    return best;
}

}  // namespace infoaccess
