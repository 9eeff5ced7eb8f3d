#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnet/channel.hpp"

namespace qnet {

/// Undirected simple graph over nodes 0..n-1, sorted adjacency lists.
/// Geometric models carry node positions; ER/BA leave them empty.
struct Graph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<NodePosition> positions;
    std::size_t edge_count = 0;

    std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj[v].size()); }
    bool has_positions() const { return !positions.empty(); }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

/// Throws on violated structural invariants (symmetry, simplicity, sorted
/// adjacency, consistent edge count). Used by tests and the file reader.
void check_invariants(const Graph& g);

/// Canonical edge enumeration: (u, v) with u < v, ascending.
std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list(const Graph& g);

/// Edge-list text format:
///   # <model> <n> <seed>
///   # pos <i> <x> <y>     (one per node, geometric models only)
///   <u> <v>               (0-based, u < v, ascending)
void write_edge_list(std::ostream& os, const Graph& g, const std::string& model, std::uint64_t seed);

struct LoadedGraph {
    Graph graph;
    std::string model;
    std::uint64_t seed = 0;
};

LoadedGraph read_edge_list(std::istream& is);

}  // namespace qnet
