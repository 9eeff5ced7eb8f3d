#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "qnet/channel.hpp"
#include "qnet/errors.hpp"
#include "qnet/graphcore.hpp"
#include "qnet/metrics.hpp"
#include "qnet/netgen.hpp"
#include "testsupport.hpp"

using namespace qnet;

namespace {

NetworkConfig sbqi_config(std::uint32_t n, double rho, std::uint32_t n_p, std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.model = ModelKind::sbqi;
    cfg.n = n;
    cfg.rho = rho;
    cfg.n_p = n_p;
    cfg.seed = seed;
    resolve_geometry(cfg);
    return cfg;
}

}  // namespace

TEST_CASE("geometry resolution and config validation") {
    NetworkConfig cfg = sbqi_config(1000, 2e-4, 50, 7);
    CHECK(cfg.radius_km == doctest::Approx(1261.566).epsilon(1e-5));
    CHECK(cfg.rho * 3.14159265358979323846 * cfg.radius_km * cfg.radius_km ==
          doctest::Approx(1000.0).epsilon(1e-12));

    NetworkConfig both = cfg;
    both.radius_km = 100.0;
    both.rho = 1e-4;
    CHECK_THROWS_AS(resolve_geometry(both), Error);

    NetworkConfig bad = cfg;
    bad.n_p = 0;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = cfg;
    bad.n = 1;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("determinism: same config gives a byte-identical graph") {
    const NetworkConfig cfg = sbqi_config(300, 2e-4, 50, 99);
    const Graph a = generate(cfg);
    const Graph b = generate(cfg);
    CHECK(a.adj == b.adj);
    CHECK(a.edge_count == b.edge_count);
    std::ostringstream sa, sb;
    write_edge_list(sa, a, "sbqi", cfg.seed);
    write_edge_list(sb, b, "sbqi", cfg.seed);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("graph invariants hold over random configs (property test)") {
    SplitMix64 rng(31337);
    int checked = 0;
    for (int rep = 0; rep < 2500; ++rep) {
        NetworkConfig cfg;
        cfg.n = 2 + static_cast<std::uint32_t>(rng.next_below(40));
        cfg.seed = rng.next_u64();
        cfg.n_p = 1 + static_cast<std::uint32_t>(rng.next_below(200));
        switch (rng.next_below(4)) {
            case 0:
                cfg.model = ModelKind::sbqi;
                cfg.rho = 1e-5 * std::exp(3.0 * rng.next_double());
                resolve_geometry(cfg);
                break;
            case 1:
                cfg.model = ModelKind::ofbqi;
                cfg.rho = 1e-4 * std::exp(3.0 * rng.next_double());
                resolve_geometry(cfg);
                break;
            case 2:
                cfg.model = ModelKind::er;
                cfg.er_mean_degree = rng.next_double() * (cfg.n - 1.001);
                break;
            default:
                cfg.model = ModelKind::ba;
                cfg.ba_m = 1 + static_cast<std::uint32_t>(rng.next_below(cfg.n - 1));
                break;
        }
        const Graph g = generate(cfg);
        CHECK_NOTHROW(check_invariants(g));
        if (cfg.geometric()) {
            REQUIRE(g.positions.size() == g.n);
            for (const auto& p : g.positions) {
                CHECK(p.x * p.x + p.y * p.y <= cfg.radius_km * cfg.radius_km * (1.0 + 1e-12));
            }
        }
        ++checked;
    }
    CHECK(checked == 2500);
}

TEST_CASE("sbqi: two center nodes link with the closed-form probability") {
    // radius -> 0 forces both nodes under the satellite; per-seed Bernoulli
    // outcomes must concentrate on link_prob(p^2, n_p).
    NetworkConfig cfg;
    cfg.model = ModelKind::sbqi;
    cfg.n = 2;
    cfg.radius_km = 1e-6;
    cfg.n_p = 50;
    resolve_geometry(cfg);
    const double p_center = p_sat(cfg.sat.h_sat_km, cfg.sat);
    const double expected = link_prob(p_center * p_center, cfg.n_p);
    CHECK(expected == doctest::Approx(0.12356).epsilon(1e-4));

    std::size_t linked = 0;
    const std::size_t seeds = 100000;
    for (std::size_t s = 0; s < seeds; ++s) {
        cfg.seed = s;
        linked += generate(cfg).edge_count;
    }
    const double freq = static_cast<double>(linked) / seeds;
    const double se = std::sqrt(expected * (1.0 - expected) / seeds);
    CHECK(std::abs(freq - expected) <= 3.0 * se);
}

TEST_CASE("sbqi: zero efficiency gives an empty graph") {
    NetworkConfig cfg = sbqi_config(50, 2e-4, 50, 5);
    cfg.sat.eta0 = 0.0;
    CHECK(generate(cfg).edge_count == 0);
}

TEST_CASE("sbqi: increasing n_p never removes an edge (shared pair variates)") {
    NetworkConfig base = sbqi_config(120, 2e-4, 5, 1234);
    Graph prev = generate(base);
    for (const std::uint32_t np : {10u, 25u, 50u, 100u}) {
        NetworkConfig cfg = base;
        cfg.n_p = np;
        const Graph next = generate(cfg);
        for (std::uint32_t u = 0; u < prev.n; ++u) {
            for (const std::uint32_t v : prev.adj[u]) {
                CHECK(next.has_edge(u, v));
            }
        }
        prev = next;
    }
}

TEST_CASE("sbqi: per-pair link frequency concentrates on Pi_ij") {
    // Fixed positions (same position substream), 1e4 pair-decision seeds.
    const NetworkConfig cfg = sbqi_config(24, 2e-4, 50, 777);
    const Graph g0 = generate(cfg);
    REQUIRE(g0.positions.size() == cfg.n);
    std::vector<double> psat(cfg.n);
    for (std::uint32_t i = 0; i < cfg.n; ++i) psat[i] = p_sat(sat_distance_km(g0.positions[i], cfg.sat), cfg.sat);

    SplitMix64 pick(4242);
    const std::size_t seeds = 10000;
    for (int rep = 0; rep < 20; ++rep) {
        const std::uint32_t i = static_cast<std::uint32_t>(pick.next_below(cfg.n - 1));
        const std::uint32_t j = i + 1 + static_cast<std::uint32_t>(pick.next_below(cfg.n - i - 1));
        const double pi_ij = link_prob(psat[i] * psat[j], cfg.n_p);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < seeds; ++s) {
            const std::uint64_t pair_seed = substream_seed(s, stream::pairs);
            const double u = pair_u01(pair_seed, i, j);
            if (u < pi_ij) ++hits;
        }
        const double freq = static_cast<double>(hits) / seeds;
        const double se = std::sqrt(pi_ij * (1.0 - pi_ij) / seeds);
        CHECK(std::abs(freq - pi_ij) <= 4.0 * se + 1e-9);
    }
}

TEST_CASE("sbqi: large-area connected phase at R=1800, N=1000") {
    double giant_sum = 0.0;
    const int reals = 40;
    for (int r = 0; r < reals; ++r) {
        NetworkConfig cfg;
        cfg.model = ModelKind::sbqi;
        cfg.n = 1000;
        cfg.radius_km = 1800.0;
        cfg.n_p = 50;
        cfg.seed = realization_seed(2025, r);
        resolve_geometry(cfg);
        const Graph g = generate(cfg);
        giant_sum += static_cast<double>(components(g).giant_size) / g.n;
    }
    CHECK(giant_sum / reals > 0.95);
}

TEST_CASE("ofbqi: short fiber always links, long fiber effectively never") {
    NetworkConfig cfg;
    cfg.model = ModelKind::ofbqi;
    cfg.n = 2;
    cfg.n_p = 1;
    cfg.radius_km = 1e-9;
    resolve_geometry(cfg);
    for (std::uint64_t s = 0; s < 300; ++s) {
        cfg.seed = s;
        CHECK(generate(cfg).edge_count == 1);  // p_fiber(~0) = 1
    }
    // Two nodes 500 km apart: Pi = 1 - (1 - 1e-10)^1000 ~ 1e-7.
    CHECK(link_prob(p_fiber(500.0, cfg.fiber), 1000) == doctest::Approx(1e-7).epsilon(0.01));
}

TEST_CASE("er: edge cases and ensemble mean degree") {
    NetworkConfig cfg;
    cfg.model = ModelKind::er;
    cfg.n = 40;
    cfg.er_mean_degree = 0.0;
    cfg.seed = 3;
    CHECK(generate(cfg).edge_count == 0);

    cfg.n = 3;
    cfg.er_mean_degree = 2.0;  // p = 1: triangle
    const Graph tri = generate(cfg);
    CHECK(tri.edge_count == 3);

    cfg.n = 10;
    cfg.er_mean_degree = 9.5;  // p > 1
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg.er_mean_degree = -0.5;
    CHECK_THROWS_AS(generate(cfg), Error);

    // <k> = 6.00 +- 0.05 on an ensemble at n = 10^4.
    double k_sum = 0.0;
    const int reals = 12;
    for (int r = 0; r < reals; ++r) {
        NetworkConfig big;
        big.model = ModelKind::er;
        big.n = 10000;
        big.er_mean_degree = 6.0;
        big.seed = realization_seed(77, r);
        k_sum += degree_stats(generate(big)).mean;
    }
    CHECK(k_sum / reals == doctest::Approx(6.0).epsilon(0.05 / 6.0));
}

TEST_CASE("ba: seed clique, exact edge count, tail exponent") {
    NetworkConfig cfg;
    cfg.model = ModelKind::ba;
    cfg.n = 4;
    cfg.ba_m = 3;
    cfg.seed = 9;
    const Graph clique = generate(cfg);
    CHECK(clique.edge_count == 6);  // K4
    for (std::uint32_t v = 0; v < 4; ++v) CHECK(clique.degree(v) == 3);

    cfg.n = 10000;
    cfg.ba_m = 3;
    const Graph big = generate(cfg);
    const std::size_t expected_edges = 6 + (big.n - 4) * 3ull;  // C(4,2) + (n-m-1)m
    CHECK(big.edge_count == expected_edges);
    CHECK(degree_stats(big).mean == doctest::Approx(6.0).epsilon(0.02));

    // Pooled tail on k in [10, 100]: log-log slope ~ -3 +- 0.5.
    std::vector<std::uint64_t> pooled(256, 0);
    for (int r = 0; r < 20; ++r) {
        cfg.seed = realization_seed(5150, r);
        const auto hist = degree_stats(generate(cfg)).histogram;
        for (std::size_t k = 0; k < hist.size() && k < pooled.size(); ++k) pooled[k] += hist[k];
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (std::size_t k = 10; k <= 100; ++k) {
        if (pooled[k] == 0) continue;
        const double x = std::log10(static_cast<double>(k));
        const double y = std::log10(static_cast<double>(pooled[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++pts;
    }
    const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.5 / 3.0));

    cfg.ba_m = 10000;
    CHECK_THROWS_AS(generate(cfg), Error);
}

TEST_CASE("edge list round-trips through the text format") {
    const NetworkConfig cfg = sbqi_config(80, 3e-4, 25, 12345);
    const Graph g = generate(cfg);
    std::ostringstream os;
    write_edge_list(os, g, model_name(cfg.model), cfg.seed);
    std::istringstream is(os.str());
    const LoadedGraph lg = read_edge_list(is);
    CHECK(lg.model == "sbqi");
    CHECK(lg.seed == cfg.seed);
    CHECK(lg.graph.adj == g.adj);
    CHECK(lg.graph.edge_count == g.edge_count);
    REQUIRE(lg.graph.positions.size() == g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        CHECK(lg.graph.positions[i].x == g.positions[i].x);
        CHECK(lg.graph.positions[i].y == g.positions[i].y);
    }
}
