#include "fixtures.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fixtures {

Graph from_pairs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
    return Graph::from_edges(n, edges);
}

Graph path(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_pairs(n, e);
}

Graph cycle(std::size_t n) {
    Graph g = path(n);
    g.add_edge(0, static_cast<NodeId>(n - 1));
    return g;
}

Graph star(std::size_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return from_pairs(leaves + 1, e);
}

Graph complete(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    return from_pairs(n, e);
}

Graph triangle() { return complete(3); }

Graph parallel_two_paths(std::size_t t) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (std::size_t i = 0; i < t; ++i) {
        const auto mid = static_cast<NodeId>(2 + i);
        e.emplace_back(0, mid);
        e.emplace_back(mid, 1);
    }
    return from_pairs(t + 2, e);
}

Graph series_parallel() { return from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 5}, {2, 4}, {4, 5}}); }

Graph random_connected(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph g = Graph::with_nodes(n);
    for (NodeId v = 1; v < n; ++v) {
        std::uniform_int_distribution<NodeId> parent(0, v - 1);
        g.add_edge(parent(rng), v);
    }
    const std::size_t cap = n * (n - 1) / 2;
    std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
    while (g.edge_count() < std::min(m, cap)) {
        const NodeId a = node(rng);
        const NodeId b = node(rng);
        if (a != b) g.add_edge(a, b);
    }
    return g;
}

std::vector<double> brute_force_access(const Graph& g, double alpha) {
    const std::size_t n = g.node_count();
    const auto edges = g.edges();
    const std::size_t m = edges.size();
    if (m > 24) throw std::invalid_argument("too many edges to enumerate");
    std::vector<double> p(n * n, 0.0);
    std::vector<std::vector<NodeId>> adj(n);
    std::vector<int> seen(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double weight = 1.0;
        for (auto& a : adj) a.clear();
        for (std::size_t e = 0; e < m; ++e) {
            if (mask >> e & 1) {
                weight *= alpha;
                adj[edges[e].u].push_back(edges[e].v);
                adj[edges[e].v].push_back(edges[e].u);
            } else {
                weight *= 1.0 - alpha;
            }
        }
        for (NodeId s = 0; s < n; ++s) {
            std::fill(seen.begin(), seen.end(), 0);
            std::queue<NodeId> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty()) {
                const NodeId x = q.front();
                q.pop();
                for (NodeId y : adj[x]) {
                    if (!seen[y]) {
                        seen[y] = 1;
                        q.push(y);
                    }
                }
            }
            for (NodeId t = 0; t < n; ++t) {
                if (seen[t]) p[s * n + t] += weight;
            }
        }
    }
    return p;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("infoaccess_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
}

}  // namespace fixtures
