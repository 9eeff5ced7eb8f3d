#include "qnet/graph.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qnet/errors.hpp"

namespace qnet {

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

void check_invariants(const Graph& g) {
    if (g.adj.size() != g.n) fail(Errc::invalid_config, "adjacency size != n");
    std::size_t deg_sum = 0;
    for (std::uint32_t u = 0; u < g.n; ++u) {
        const auto& nb = g.adj[u];
        deg_sum += nb.size();
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const std::uint32_t v = nb[k];
            if (v >= g.n) fail(Errc::invalid_config, "neighbor index out of range");
            if (v == u) fail(Errc::invalid_config, "self-loop at node " + std::to_string(u));
            if (k > 0 && nb[k - 1] >= v) fail(Errc::invalid_config, "adjacency not strictly sorted");
            if (!g.has_edge(v, u)) fail(Errc::invalid_config, "asymmetric edge");
        }
    }
    if (deg_sum % 2 != 0 || deg_sum / 2 != g.edge_count) {
        fail(Errc::invalid_config, "edge count inconsistent with degrees");
    }
    if (!g.positions.empty() && g.positions.size() != g.n) {
        fail(Errc::invalid_config, "positions size != n");
    }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list(const Graph& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g.edge_count);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const std::uint32_t v : g.adj[u]) {
            if (v > u) edges.emplace_back(u, v);
        }
    }
    return edges;
}

void write_edge_list(std::ostream& os, const Graph& g, const std::string& model, std::uint64_t seed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "# %s %u %" PRIu64 "\n", model.c_str(), g.n, seed);
    os << buf;
    if (g.has_positions()) {
        for (std::uint32_t i = 0; i < g.n; ++i) {
            std::snprintf(buf, sizeof buf, "# pos %u %.17g %.17g\n", i, g.positions[i].x, g.positions[i].y);
            os << buf;
        }
    }
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const std::uint32_t v : g.adj[u]) {
            if (v > u) {
                std::snprintf(buf, sizeof buf, "%u %u\n", u, v);
                os << buf;
            }
        }
    }
}

LoadedGraph read_edge_list(std::istream& is) {
    LoadedGraph out;
    std::string line;
    if (!std::getline(is, line)) fail(Errc::parse_error, "empty edge-list file");
    {
        std::istringstream hs(line);
        std::string hash;
        if (!(hs >> hash >> out.model >> out.graph.n >> out.seed) || hash != "#") {
            fail(Errc::parse_error, "bad header line: " + line);
        }
    }
    out.graph.adj.assign(out.graph.n, {});
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ps(line);
            std::string hash, tag;
            std::uint32_t i = 0;
            NodePosition pos;
            if (!(ps >> hash >> tag >> i >> pos.x >> pos.y) || tag != "pos" || i >= out.graph.n) {
                fail(Errc::parse_error, "bad pos line " + std::to_string(lineno));
            }
            if (out.graph.positions.empty()) out.graph.positions.resize(out.graph.n);
            out.graph.positions[i] = pos;
            continue;
        }
        std::istringstream es(line);
        std::uint32_t u = 0, v = 0;
        if (!(es >> u >> v) || u >= v || v >= out.graph.n) {
            fail(Errc::parse_error, "bad edge line " + std::to_string(lineno) + ": " + line);
        }
        out.graph.adj[u].push_back(v);
        out.graph.adj[v].push_back(u);
        ++out.graph.edge_count;
    }
    for (auto& nb : out.graph.adj) std::sort(nb.begin(), nb.end());
    check_invariants(out.graph);
    return out;
}

}  // namespace qnet
