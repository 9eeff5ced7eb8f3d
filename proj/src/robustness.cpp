#include "qnet/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "qnet/errors.hpp"

namespace qnet {

namespace {

// Union-find tracking component count and largest component size while nodes
// or edges are added back in reverse removal order.
struct GrowingForest {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    std::uint32_t components = 0;
    std::uint32_t largest = 0;

    explicit GrowingForest(std::uint32_t n) : parent(n), size(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void activate(std::uint32_t v) {
        size[v] = 1;
        ++components;
        largest = std::max(largest, 1u);
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        largest = std::max(largest, size[a]);
        --components;
    }
};

void require_grid(std::span<const double> f_grid) {
    if (f_grid.empty()) fail(Errc::invalid_parameter, "empty removal grid");
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        if (!(f_grid[i] >= 0.0 && f_grid[i] <= 1.0)) {
            fail(Errc::invalid_parameter, "grid fractions must lie in [0, 1]");
        }
        if (i > 0 && !(f_grid[i] > f_grid[i - 1])) {
            fail(Errc::invalid_parameter, "grid must be strictly increasing");
        }
    }
}

std::uint32_t giant_or_fail(const Graph& g) {
    const std::uint32_t giant = components(g).giant_size;
    if (giant < 2) fail(Errc::degenerate_input, "giant cluster smaller than 2 nodes");
    return giant;
}

}  // namespace

double n_iso(const ComponentPartition& part) {
    if (part.count() <= 1) return 0.0;
    std::uint64_t total = 0;
    for (const std::uint32_t s : part.sizes) total += s;
    return static_cast<double>(total - part.giant_size) / static_cast<double>(part.count() - 1);
}

std::size_t RemovalTrace::index_for(double f) const {
    const auto removed = static_cast<std::int64_t>(std::llround(f * static_cast<double>(total)));
    return static_cast<std::size_t>(std::clamp<std::int64_t>(removed, 0, static_cast<std::int64_t>(total)));
}

double RemovalTrace::ng_at(double f) const {
    if (giant0 == 0) return 0.0;
    return static_cast<double>(giant[index_for(f)]) / static_cast<double>(giant0);
}

double RemovalTrace::niso_at(double f) const {
    const std::size_t idx = index_for(f);
    const std::uint32_t k = comps[idx];
    if (k <= 1) return 0.0;
    const std::uint64_t active = node_protocol ? total - idx : n;
    return static_cast<double>(active - giant[idx]) / static_cast<double>(k - 1);
}

RemovalTrace node_removal_trace(const Graph& g, const std::vector<std::uint32_t>& order) {
    if (order.size() != g.n) fail(Errc::invalid_parameter, "removal order must cover every node");
    RemovalTrace tr;
    tr.n = g.n;
    tr.total = g.n;
    tr.node_protocol = true;
    tr.giant.assign(g.n + 1, 0);
    tr.comps.assign(g.n + 1, 0);

    std::vector<std::uint8_t> active(g.n, 0);
    GrowingForest forest(g.n);
    // Replay backwards: state after adding order[k..n-1] equals the forward
    // state with k nodes removed.
    for (std::size_t k = g.n; k-- > 0;) {
        const std::uint32_t v = order[k];
        forest.activate(v);
        active[v] = 1;
        for (const std::uint32_t w : g.adj[v]) {
            if (active[w]) forest.unite(v, w);
        }
        tr.giant[k] = forest.largest;
        tr.comps[k] = forest.components;
    }
    tr.giant0 = tr.giant[0];
    return tr;
}

RemovalTrace link_removal_trace(const Graph& g, const std::vector<std::uint32_t>& edge_order) {
    const auto edges = edge_list(g);
    if (edge_order.size() != edges.size()) fail(Errc::invalid_parameter, "edge order must cover every edge");
    RemovalTrace tr;
    tr.n = g.n;
    tr.total = edges.size();
    tr.node_protocol = false;
    tr.giant.assign(edges.size() + 1, 0);
    tr.comps.assign(edges.size() + 1, 0);

    GrowingForest forest(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v) forest.activate(v);
    tr.giant[edges.size()] = g.n > 0 ? 1 : 0;
    tr.comps[edges.size()] = forest.components;
    for (std::size_t k = edges.size(); k-- > 0;) {
        const auto [u, v] = edges[edge_order[k]];
        forest.unite(u, v);
        tr.giant[k] = forest.largest;
        tr.comps[k] = forest.components;
    }
    tr.giant0 = tr.giant[0];
    return tr;
}

std::vector<std::uint32_t> random_node_order(std::uint32_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    return order;
}

std::vector<std::uint32_t> targeted_node_order(const Graph& g, AttackMode mode) {
    std::vector<std::uint32_t> order;
    order.reserve(g.n);
    if (mode == AttackMode::initial_degree) {
        order.resize(g.n);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return g.degree(a) > g.degree(b);
        });
        return order;
    }
    // Adaptive: always remove the currently highest-degree node, ties by
    // lowest index. Lazy max-heap over (current degree, node).
    std::vector<std::uint32_t> deg(g.n);
    std::vector<std::uint8_t> removed(g.n, 0);
    using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (degree, ~node)
    std::priority_queue<Entry> heap;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        deg[v] = g.degree(v);
        heap.emplace(deg[v], ~v);
    }
    while (!heap.empty()) {
        const auto [d, nv] = heap.top();
        heap.pop();
        const std::uint32_t v = ~nv;
        if (removed[v] || deg[v] != d) continue;  // stale entry
        removed[v] = 1;
        order.push_back(v);
        for (const std::uint32_t w : g.adj[v]) {
            if (!removed[w]) {
                --deg[w];
                heap.emplace(deg[w], ~w);
            }
        }
    }
    return order;
}

std::vector<std::uint32_t> random_edge_order(std::size_t m, SplitMix64& rng) {
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    return order;
}

RobustnessCurve curve_from_trace(const RemovalTrace& trace, std::span<const double> f_grid) {
    require_grid(f_grid);
    RobustnessCurve curve;
    curve.f_grid.assign(f_grid.begin(), f_grid.end());
    curve.n_g.reserve(f_grid.size());
    curve.n_iso.reserve(f_grid.size());
    for (const double f : f_grid) {
        curve.n_g.push_back(trace.ng_at(f));
        curve.n_iso.push_back(trace.niso_at(f));
    }
    return curve;
}

RobustnessCurve random_node_failure(const Graph& g, std::span<const double> f_grid, SplitMix64& rng) {
    giant_or_fail(g);
    const auto order = random_node_order(g.n, rng);
    return curve_from_trace(node_removal_trace(g, order), f_grid);
}

RobustnessCurve targeted_attack(const Graph& g, std::span<const double> f_grid, AttackMode mode) {
    giant_or_fail(g);
    const auto order = targeted_node_order(g, mode);
    return curve_from_trace(node_removal_trace(g, order), f_grid);
}

RobustnessCurve random_link_failure(const Graph& g, std::span<const double> f_grid, SplitMix64& rng) {
    if (g.edge_count == 0) fail(Errc::degenerate_input, "graph has no links to remove");
    const auto order = random_edge_order(g.edge_count, rng);
    return curve_from_trace(link_removal_trace(g, order), f_grid);
}

RobustnessCurve edge_cut_attack(const Graph& g, SplitMix64& rng, std::uint32_t pair_budget) {
    const std::uint32_t giant0 = giant_or_fail(g);
    const auto edges = edge_list(g);
    if (edges.empty()) fail(Errc::degenerate_input, "graph has no links");
    std::vector<std::uint8_t> alive(edges.size(), 1);

    Graph current = g;  // adjacency rebuilt after each cut
    RobustnessCurve curve;
    curve.f_grid.push_back(0.0);
    curve.n_g.push_back(1.0);
    curve.n_iso.push_back(n_iso(components(g)));

    std::size_t removed = 0;
    std::vector<std::uint32_t> giant_nodes;
    for (std::uint32_t iter = 0; iter < pair_budget; ++iter) {
        const ComponentPartition part = components(current);
        if (part.giant_size < 2) break;
        giant_nodes.clear();
        for (std::uint32_t v = 0; v < g.n; ++v) {
            if (part.component_id[v] == part.giant_id) giant_nodes.push_back(v);
        }
        const std::uint32_t s = giant_nodes[rng.next_below(giant_nodes.size())];
        std::uint32_t t = s;
        while (t == s) t = giant_nodes[rng.next_below(giant_nodes.size())];

        const auto cut = min_cut_edge_ids(g.n, edges, alive, s, t);
        for (const std::uint32_t e : cut) {
            alive[e] = 0;
            const auto [u, v] = edges[e];
            auto& au = current.adj[u];
            auto& av = current.adj[v];
            au.erase(std::lower_bound(au.begin(), au.end(), v));
            av.erase(std::lower_bound(av.begin(), av.end(), u));
        }
        current.edge_count -= cut.size();
        removed += cut.size();

        const ComponentPartition after = components(current);
        if (after.component_id[s] == after.component_id[t]) {
            fail(Errc::invalid_config, "min cut failed to disconnect the chosen pair");
        }
        curve.f_grid.push_back(static_cast<double>(removed) / static_cast<double>(edges.size()));
        curve.n_g.push_back(static_cast<double>(after.giant_size) / static_cast<double>(giant0));
        curve.n_iso.push_back(n_iso(after));
        if (after.giant_size < 2) break;
    }
    return curve;
}

ThresholdInfo critical_threshold(const RobustnessCurve& curve) {
    if (curve.f_grid.size() < 3) fail(Errc::invalid_parameter, "need at least 3 grid points");
    std::size_t best = curve.n_iso.size();
    for (std::size_t i = 0; i < curve.n_iso.size(); ++i) {
        if (curve.n_iso[i] > 0.0 && (best == curve.n_iso.size() || curve.n_iso[i] > curve.n_iso[best])) {
            best = i;
        }
    }
    if (best == curve.n_iso.size()) fail(Errc::no_peak, "n_iso is identically zero: network never fragments");
    ThresholdInfo info;
    info.f_c = curve.f_grid[best];
    info.n_iso_peak = curve.n_iso[best];
    info.n_g_at_fc = curve.n_g[best];
    info.crosscheck_ok = info.n_g_at_fc < 0.05;
    return info;
}

std::vector<double> default_f_grid() {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = static_cast<double>(i) / 100.0;
    return grid;
}

}  // namespace qnet
