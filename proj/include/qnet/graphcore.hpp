#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

/// Connected components; sizes sorted descending. The giant is the largest
/// component, ties broken by the smallest component id (ids are assigned in
/// order of first node occurrence, so the tie-break is deterministic).
struct ComponentPartition {
    std::vector<std::uint32_t> component_id;  // per node
    std::vector<std::uint32_t> sizes;         // descending
    std::uint32_t giant_size = 0;
    std::uint32_t giant_id = 0;
    std::uint32_t count() const { return static_cast<std::uint32_t>(sizes.size()); }
};

ComponentPartition components(const Graph& g);

/// Hop distances from source; kUnreachable for nodes outside its component.
std::vector<std::uint32_t> bfs_distances(const Graph& g, std::uint32_t source);

struct EdgeCut {
    std::uint32_t size = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (u, v), u < v
};

/// Minimum-cardinality s-t edge cut via unit-capacity max flow (shortest
/// augmenting paths). Disconnected pairs yield size 0 with an empty list.
EdgeCut min_edge_cut(const Graph& g, std::uint32_t s, std::uint32_t t);

/// Same computation over an explicit edge list with a liveness mask; returns
/// indices into `edges`. Lets removal protocols cut without copying graphs.
std::vector<std::uint32_t> min_cut_edge_ids(std::uint32_t n,
                                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                            const std::vector<std::uint8_t>& alive,
                                            std::uint32_t s, std::uint32_t t);

}  // namespace qnet
