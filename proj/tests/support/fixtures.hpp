#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "infoaccess/graph.hpp"

namespace fixtures {

using infoaccess::Graph;
using infoaccess::NodeId;

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph star(std::size_t leaves);
Graph complete(std::size_t n);
Graph triangle();
Graph from_pairs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);

/// Two hubs joined by t internally disjoint paths of length two; hubs are 0 and 1.
Graph parallel_two_paths(std::size_t t);

/// x-u, u-v, v-s1, s1-y, v-s2, s2-y with x=0 u=1 v=2 s1=3 s2=4 y=5.
Graph series_parallel();

/// Random spanning tree plus extra uniform edges until m edges (capped at n(n-1)/2).
Graph random_connected(std::size_t n, std::size_t m, std::uint64_t seed);

/// Dense n x n matrix of exact access probabilities, computed by enumerating
/// every live-edge subset and flooding each subset with breadth-first search.
std::vector<double> brute_force_access(const Graph& g, double alpha);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace fixtures
