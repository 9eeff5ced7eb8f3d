#include "qnet/graphcore.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qnet/errors.hpp"

namespace qnet {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];  // path halving
            x = parent[x];
        }
        return x;
    }

    // Smaller root index wins; keeps labels independent of union order.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

ComponentPartition components(const Graph& g) {
    UnionFind uf(g.n);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const std::uint32_t v : g.adj[u]) {
            if (v > u) uf.unite(u, v);
        }
    }
    ComponentPartition part;
    part.component_id.assign(g.n, kUnreachable);
    std::vector<std::uint32_t> size_by_id;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        const std::uint32_t root = uf.find(v);
        if (part.component_id[root] == kUnreachable) {
            part.component_id[root] = static_cast<std::uint32_t>(size_by_id.size());
            size_by_id.push_back(0);
        }
        part.component_id[v] = part.component_id[root];
        ++size_by_id[part.component_id[v]];
    }
    part.giant_size = 0;
    part.giant_id = 0;
    for (std::uint32_t id = 0; id < size_by_id.size(); ++id) {
        if (size_by_id[id] > part.giant_size) {
            part.giant_size = size_by_id[id];
            part.giant_id = id;
        }
    }
    part.sizes = std::move(size_by_id);
    std::sort(part.sizes.begin(), part.sizes.end(), std::greater<>());
    return part;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, std::uint32_t source) {
    if (source >= g.n) fail(Errc::invalid_node, "source " + std::to_string(source) + " out of range");
    std::vector<std::uint32_t> dist(g.n, kUnreachable);
    std::vector<std::uint32_t> queue;
    queue.reserve(g.n);
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        const std::uint32_t du = dist[u];
        for (const std::uint32_t v : g.adj[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<std::uint32_t> min_cut_edge_ids(std::uint32_t n,
                                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                            const std::vector<std::uint8_t>& alive,
                                            std::uint32_t s, std::uint32_t t) {
    if (s >= n || t >= n) fail(Errc::invalid_node, "cut endpoint out of range");
    if (s == t) fail(Errc::same_node, "cut endpoints must differ");

    // Arc pair (2e, 2e+1) per undirected edge, residual capacity 1 each way.
    const std::size_t m = edges.size();
    std::vector<std::uint32_t> head(n, kUnreachable), nxt(2 * m), to(2 * m);
    std::vector<std::uint8_t> res(2 * m, 1);
    for (std::size_t e = 0; e < m; ++e) {
        if (!alive[e]) continue;
        const auto [u, v] = edges[e];
        to[2 * e] = v;
        nxt[2 * e] = head[u];
        head[u] = static_cast<std::uint32_t>(2 * e);
        to[2 * e + 1] = u;
        nxt[2 * e + 1] = head[v];
        head[v] = static_cast<std::uint32_t>(2 * e + 1);
    }

    std::vector<std::uint32_t> parent_arc(n);
    std::vector<std::uint8_t> seen(n);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);

    const auto bfs_to = [&](std::uint32_t target) -> bool {
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        queue.push_back(s);
        seen[s] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            const std::uint32_t u = queue[h];
            for (std::uint32_t a = head[u]; a != kUnreachable; a = nxt[a]) {
                if (res[a] == 0 || seen[to[a]]) continue;
                seen[to[a]] = 1;
                parent_arc[to[a]] = a;
                if (to[a] == target) return true;
                queue.push_back(to[a]);
            }
        }
        return false;
    };

    while (bfs_to(t)) {
        // Unit capacities: each augmenting path carries exactly one unit.
        std::uint32_t v = t;
        while (v != s) {
            const std::uint32_t a = parent_arc[v];
            res[a] = 0;
            res[a ^ 1] = static_cast<std::uint8_t>(res[a ^ 1] + 1);
            v = to[a ^ 1];
        }
    }

    bfs_to(t);  // final residual reachability from s
    std::vector<std::uint32_t> cut;
    for (std::size_t e = 0; e < m; ++e) {
        if (!alive[e]) continue;
        if (seen[edges[e].first] != seen[edges[e].second]) {
            cut.push_back(static_cast<std::uint32_t>(e));
        }
    }
    return cut;
}

EdgeCut min_edge_cut(const Graph& g, std::uint32_t s, std::uint32_t t) {
    const auto edges = edge_list(g);
    const std::vector<std::uint8_t> alive(edges.size(), 1);
    const auto ids = min_cut_edge_ids(g.n, edges, alive, s, t);
    EdgeCut cut;
    cut.size = static_cast<std::uint32_t>(ids.size());
    cut.edges.reserve(ids.size());
    for (const std::uint32_t e : ids) cut.edges.push_back(edges[e]);
    return cut;
}

}  // namespace qnet
