#pragma once

// Shared helpers for the test suites: independent oracles (Floyd-Warshall
// distances, exhaustive min cuts), small random graph generators, and a few
// statistics utilities. Everything here is deliberately brute-force and
// separate from the library implementations it checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/graphcore.hpp"
#include "qnet/rng.hpp"

namespace testsupport {

inline constexpr std::uint32_t kInf = 0xFFFFFFFFu;

/// Graph from an explicit edge list (validates nothing; test input only).
inline qnet::Graph graph_from_edges(std::uint32_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    qnet::Graph g;
    g.n = n;
    g.adj.resize(n);
    for (const auto& [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.edge_count = edges.size();
    return g;
}

/// Erdos-Renyi style random test graph, independent of the library's
/// generators (plain sequential draws).
inline qnet::Graph random_graph(std::uint32_t n, double p, qnet::SplitMix64& rng) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            if (rng.next_double() < p) edges.emplace_back(u, v);
        }
    }
    return graph_from_edges(n, edges);
}

/// All-pairs hop distances by Floyd-Warshall.
inline std::vector<std::vector<std::uint64_t>> floyd_warshall(const qnet::Graph& g) {
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::vector<std::uint64_t>> d(g.n, std::vector<std::uint64_t>(g.n, inf));
    for (std::uint32_t v = 0; v < g.n; ++v) d[v][v] = 0;
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const std::uint32_t v : g.adj[u]) d[u][v] = 1;
    }
    for (std::uint32_t k = 0; k < g.n; ++k) {
        for (std::uint32_t i = 0; i < g.n; ++i) {
            for (std::uint32_t j = 0; j < g.n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    return d;
}

/// Giant-cluster <l> and diameter from the Floyd-Warshall table; giant is the
/// largest component (smallest label on ties). Requires giant >= 2.
struct PathOracle {
    double avg = 0.0;
    std::uint64_t diameter = 0;
    std::uint32_t giant = 0;
};

inline PathOracle path_oracle(const qnet::Graph& g) {
    const auto d = floyd_warshall(g);
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max() / 4;
    // label components from reachability
    std::vector<std::uint32_t> comp(g.n, kInf);
    std::uint32_t ncomp = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (comp[v] != kInf) continue;
        for (std::uint32_t w = 0; w < g.n; ++w) {
            if (d[v][w] < inf) comp[w] = ncomp;
        }
        ++ncomp;
    }
    std::vector<std::uint32_t> sizes(ncomp, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) ++sizes[comp[v]];
    std::uint32_t giant_id = 0;
    for (std::uint32_t c = 1; c < ncomp; ++c) {
        if (sizes[c] > sizes[giant_id]) giant_id = c;
    }
    PathOracle o;
    o.giant = sizes[giant_id];
    std::uint64_t sum = 0, pairs = 0;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        if (comp[i] != giant_id) continue;
        for (std::uint32_t j = i + 1; j < g.n; ++j) {
            if (comp[j] != giant_id) continue;
            sum += d[i][j];
            o.diameter = std::max(o.diameter, d[i][j]);
            ++pairs;
        }
    }
    o.avg = pairs > 0 ? static_cast<double>(sum) / static_cast<double>(pairs) : 0.0;
    return o;
}

/// Exhaustive minimum s-t cut: tries every edge subset, smallest first.
/// Feasible for graphs with <= ~12 edges.
inline std::uint32_t exhaustive_min_cut(const qnet::Graph& g, std::uint32_t s, std::uint32_t t) {
    const auto edges = qnet::edge_list(g);
    const std::size_t m = edges.size();
    const auto connected_without = [&](std::uint32_t removed_mask) {
        std::vector<std::vector<std::uint32_t>> adj(g.n);
        for (std::size_t e = 0; e < m; ++e) {
            if (removed_mask & (1u << e)) continue;
            adj[edges[e].first].push_back(edges[e].second);
            adj[edges[e].second].push_back(edges[e].first);
        }
        std::vector<std::uint8_t> seen(g.n, 0);
        std::vector<std::uint32_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            if (u == t) return true;
            for (const std::uint32_t v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return false;
    };
    if (!connected_without(0)) return 0;
    std::uint32_t best = static_cast<std::uint32_t>(m);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const std::uint32_t bits = static_cast<std::uint32_t>(__builtin_popcount(mask));
        if (bits >= best) continue;
        if (!connected_without(mask)) best = bits;
    }
    return best;
}

/// FNV-1a over the edge list; used by determinism and birthday tests.
inline std::uint64_t graph_hash(const qnet::Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xFF;
            h *= 1099511628211ull;
        }
    };
    mix(g.n);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const std::uint32_t v : g.adj[u]) {
            if (v > u) mix((static_cast<std::uint64_t>(u) << 32) | v);
        }
    }
    return h;
}

/// chi-squared critical values at p = 0.001 (upper tail).
inline double chi2_crit_p001(int dof) {
    // Precomputed: rejecting above this value has probability 1e-3.
    switch (dof) {
        case 7: return 24.3219;
        default: return -1.0;
    }
}

}  // namespace testsupport
