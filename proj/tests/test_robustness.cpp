#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qnet/ensemble.hpp"
#include "qnet/errors.hpp"
#include "qnet/netgen.hpp"
#include "qnet/robustness.hpp"
#include "testsupport.hpp"

using namespace qnet;
using testsupport::graph_from_edges;

TEST_CASE("n_iso: mean size of the non-giant components") {
    const auto from_sizes = [](std::vector<std::uint32_t> sizes) {
        ComponentPartition part;
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        part.sizes = sizes;
        part.giant_size = sizes.front();
        return part;
    };
    CHECK(n_iso(from_sizes({7})) == 0.0);
    CHECK(n_iso(from_sizes({5, 2, 2, 1})) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(n_iso(from_sizes({3, 3})) == 3.0);  // tie: first is the giant
}

TEST_CASE("removal curves: endpoints and monotonicity") {
    SplitMix64 rng(41);
    const Graph g = testsupport::random_graph(60, 0.12, rng);
    const auto grid = default_f_grid();
    SplitMix64 proto_rng(42);
    const RobustnessCurve curve = random_node_failure(g, grid, proto_rng);
    REQUIRE(curve.f_grid.size() == 101);
    CHECK(curve.n_g.front() == 1.0);
    CHECK(curve.n_g.back() == 0.0);  // empty graph convention
    for (std::size_t i = 1; i < curve.n_g.size(); ++i) CHECK(curve.n_g[i] <= curve.n_g[i - 1]);
}

TEST_CASE("incremental playback equals from-scratch recomputation") {
    SplitMix64 rng(43);
    for (int rep = 0; rep < 40; ++rep) {
        const std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.next_below(248));
        Graph g = testsupport::random_graph(n, 3.0 / n, rng);
        if (components(g).giant_size < 2) continue;

        const auto order = random_node_order(g.n, rng);
        const RemovalTrace trace = node_removal_trace(g, order);
        for (const std::uint32_t removed : {n / 7, n / 3, n / 2, n - 1}) {
            // rebuild the survivor subgraph from scratch
            std::vector<std::uint8_t> dead(n, 0);
            for (std::uint32_t k = 0; k < removed; ++k) dead[order[k]] = 1;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
            for (const auto& e : edge_list(g)) {
                if (!dead[e.first] && !dead[e.second]) kept.push_back(e);
            }
            Graph sub = graph_from_edges(n, kept);
            // count only active nodes: drop dead singletons from the partition
            const ComponentPartition part = components(sub);
            std::uint32_t giant = 0;
            std::uint32_t comps = 0;
            std::vector<std::uint32_t> size_of(part.count(), 0);
            for (std::uint32_t v = 0; v < n; ++v) {
                if (!dead[v]) ++size_of[part.component_id[v]];
            }
            for (const std::uint32_t s : size_of) {
                if (s > 0) {
                    ++comps;
                    giant = std::max(giant, s);
                }
            }
            CHECK(trace.giant[removed] == giant);
            CHECK(trace.comps[removed] == comps);
        }
    }
}

TEST_CASE("targeted attack shatters a star immediately in both modes") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> spokes;
    for (std::uint32_t v = 1; v < 20; ++v) spokes.emplace_back(0, v);
    const Graph star = graph_from_edges(20, spokes);
    for (const AttackMode mode : {AttackMode::adaptive, AttackMode::initial_degree}) {
        const auto order = targeted_node_order(star, mode);
        CHECK(order.front() == 0);  // hub first
        const std::vector<double> grid{0.0, 0.05, 0.5, 1.0};
        const RobustnessCurve curve = targeted_attack(star, grid, mode);
        CHECK(curve.n_g[0] == 1.0);
        CHECK(curve.n_g[1] == doctest::Approx(1.0 / 20.0).epsilon(1e-12));  // hub gone: N_G = 1
    }
}

TEST_CASE("adaptive targeted order breaks degree ties by lowest index") {
    const Graph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const auto order = targeted_node_order(k4, AttackMode::adaptive);
    CHECK(order == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("random link failure on a tree: the first removal always splits the giant") {
    SplitMix64 rng(47);
    // a path is a tree: every edge is a bridge, so removing any single edge
    // strictly shrinks the (unique) giant
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v + 1 < 30; ++v) edges.emplace_back(v, v + 1);
    const Graph tree = graph_from_edges(30, edges);
    for (int rep = 0; rep < 25; ++rep) {
        const auto order = random_edge_order(tree.edge_count, rng);
        const RemovalTrace trace = link_removal_trace(tree, order);
        CHECK(trace.giant[0] == 30);
        CHECK(trace.giant[1] < 30);
        // and the giant never grows as more links are removed
        for (std::size_t removed = 1; removed <= tree.edge_count; ++removed) {
            CHECK(trace.giant[removed] <= trace.giant[removed - 1]);
        }
    }
}

TEST_CASE("critical_threshold: peak location and failure modes") {
    RobustnessCurve synthetic;
    for (int i = 0; i <= 10; ++i) {
        const double f = 0.1 * i;
        synthetic.f_grid.push_back(f);
        synthetic.n_g.push_back(1.0 - f);
        synthetic.n_iso.push_back(i == 7 ? 3.0 : 1.0 / (1.0 + std::abs(f - 0.7)));
    }
    const ThresholdInfo info = critical_threshold(synthetic);
    CHECK(info.f_c == doctest::Approx(0.7));
    CHECK(info.n_iso_peak == 3.0);

    RobustnessCurve flat;
    flat.f_grid = {0.0, 0.5, 1.0};
    flat.n_g = {1.0, 1.0, 1.0};
    flat.n_iso = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(critical_threshold(flat), Error);

    RobustnessCurve tiny;
    tiny.f_grid = {0.0, 1.0};
    tiny.n_g = {1.0, 0.0};
    tiny.n_iso = {0.0, 1.0};
    CHECK_THROWS_AS(critical_threshold(tiny), Error);
}

TEST_CASE("edge_cut_attack: named cases") {
    SUBCASE("path pair removes the single bridge") {
        const Graph path3 = graph_from_edges(3, {{0, 1}, {1, 2}});
        SplitMix64 rng(1);  // whichever pair is drawn, one cut edge suffices
        const RobustnessCurve curve = edge_cut_attack(path3, rng, 1);
        REQUIRE(curve.f_grid.size() == 2);
        CHECK(curve.n_g[1] <= 2.0 / 3.0 + 1e-12);
        CHECK(curve.f_grid[1] == doctest::Approx(0.5));  // 1 of 2 edges
    }
    SUBCASE("K4 loses 3 edges and stays connected") {
        const Graph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        SplitMix64 rng(2);
        const RobustnessCurve curve = edge_cut_attack(k4, rng, 1);
        REQUIRE(curve.f_grid.size() == 2);
        CHECK(curve.f_grid[1] == doctest::Approx(0.5));  // 3 of 6 edges
        CHECK(curve.n_g[1] == doctest::Approx(0.75));    // one node split off, rest connected
    }
}

TEST_CASE("er random failure reproduces percolation theory at N=10000") {
    NetworkConfig cfg;
    cfg.model = ModelKind::er;
    cfg.n = 10000;
    cfg.er_mean_degree = 6.0;
    cfg.seed = 161803;
    RobustnessRunSpec spec;
    spec.protocol = Protocol::random_node;
    spec.realizations = 20;
    const RobustnessEnsemble ens = run_robustness_ensemble(cfg, spec);
    REQUIRE(!ens.no_peak);
    CHECK(std::abs(ens.threshold.f_c - (1.0 - 1.0 / 6.0)) <= 0.03);
    // n_iso peak must sit where the giant is (nearly) gone
    CHECK(ens.threshold.n_g_at_fc < 0.05);
}

TEST_CASE("protocol preconditions") {
    const Graph empty = graph_from_edges(4, {});
    SplitMix64 rng(3);
    const auto grid = default_f_grid();
    CHECK_THROWS_AS(random_node_failure(empty, grid, rng), Error);
    CHECK_THROWS_AS(random_link_failure(empty, grid, rng), Error);
    CHECK_THROWS_AS(edge_cut_attack(empty, rng, 5), Error);
}
