#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qnet/channel.hpp"
#include "qnet/errors.hpp"
#include "qnet/rng.hpp"
#include "testsupport.hpp"

using namespace qnet;

TEST_CASE("sample_positions stays in the disk and is uniform in area") {
    SplitMix64 rng(1);
    SUBCASE("single tiny disk") {
        const auto pos = sample_positions(1, 0.001, rng);
        CHECK(std::hypot(pos[0].x, pos[0].y) <= 0.001);
    }
    SUBCASE("radial moments at n = 1e5") {
        const double radius = 1800.0;
        const auto pos = sample_positions(100000, radius, rng);
        double sum_r2 = 0.0;
        std::size_t inner = 0;
        for (const auto& p : pos) {
            const double r2 = p.x * p.x + p.y * p.y;
            CHECK(r2 <= radius * radius * (1.0 + 1e-12));
            sum_r2 += r2;
            if (r2 <= radius * radius / 4.0) ++inner;
        }
        // E[r^2] = R^2/2 for uniform-area sampling.
        CHECK(sum_r2 / pos.size() == doctest::Approx(radius * radius / 2.0).epsilon(0.01));
        // P(r <= R/2) = area ratio 1/4.
        CHECK(static_cast<double>(inner) / pos.size() == doctest::Approx(0.25).epsilon(0.01));
    }
    SUBCASE("chi-squared over 8 equal-area annuli") {
        const std::size_t n = 100000;
        const auto pos = sample_positions(n, 1.0, rng);
        std::vector<std::size_t> counts(8, 0);
        for (const auto& p : pos) {
            const double r2 = p.x * p.x + p.y * p.y;  // uniform on [0,1] under H0
            std::size_t bin = static_cast<std::size_t>(r2 * 8.0);
            if (bin > 7) bin = 7;
            ++counts[bin];
        }
        const double expected = static_cast<double>(n) / 8.0;
        double chi2 = 0.0;
        for (const std::size_t c : counts) {
            const double d = static_cast<double>(c) - expected;
            chi2 += d * d / expected;
        }
        CHECK(chi2 < testsupport::chi2_crit_p001(7));
    }
    SUBCASE("errors") {
        SplitMix64 r2(3);
        CHECK_THROWS_AS(sample_positions(0, 1.0, r2), Error);
        CHECK_THROWS_AS(sample_positions(5, 0.0, r2), Error);
        CHECK_THROWS_AS(sample_positions(5, -1.0, r2), Error);
    }
}

TEST_CASE("sat_distance: hypotenuse to the satellite at disk center") {
    SatelliteParams sat;
    CHECK(sat_distance_km({0.0, 0.0}, sat) == 500.0);
    CHECK(sat_distance_km({1800.0, 0.0}, sat) == doctest::Approx(1868.154168).epsilon(1e-9));
    SatelliteParams low = sat;
    low.h_sat_km = 400.0;
    CHECK(sat_distance_km({0.0, 300.0}, low) == 500.0);
}

TEST_CASE("p_sat values and shape") {
    SatelliteParams sat;
    CHECK(p_sat(500.0, sat) == doctest::Approx(0.051325).epsilon(2e-5));
    CHECK(p_sat(1868.154168, sat) == doctest::Approx(0.005027).epsilon(1e-3));

    SUBCASE("zero efficiency kills the channel") {
        SatelliteParams dead = sat;
        dead.eta0 = 0.0;
        for (const double d : {500.0, 900.0, 4000.0}) CHECK(p_sat(d, dead) == 0.0);
    }
    SUBCASE("bounded by eta0 and vanishing at long range") {
        SplitMix64 rng(5);
        for (int i = 0; i < 1000; ++i) {
            const double d = 500.0 + 1e4 * rng.next_double();
            const double p = p_sat(d, sat);
            CHECK(p >= 0.0);
            CHECK(p <= sat.eta0);
        }
        CHECK(p_sat(1e6, sat) < 1e-6 * sat.eta0);
    }
    SUBCASE("strictly decreasing in distance") {
        SplitMix64 rng(6);
        for (int i = 0; i < 1000; ++i) {
            const double d1 = 500.0 + 2e4 * rng.next_double();
            const double d2 = d1 * (1.0 + 1e-6 + rng.next_double());
            CHECK(p_sat(d1, sat) > p_sat(d2, sat));
        }
    }
    CHECK_THROWS_AS(p_sat(0.0, sat), Error);
    CHECK_THROWS_AS(p_sat(-5.0, sat), Error);
}

TEST_CASE("p_fiber: telecom attenuation") {
    FiberParams fiber;
    CHECK(p_fiber(0.0, fiber) == 1.0);
    CHECK(p_fiber(50.0, fiber) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(p_fiber(100.0, fiber) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK_THROWS_AS(p_fiber(-1.0, fiber), Error);
}

TEST_CASE("link_prob closed form") {
    CHECK(link_prob(0.0026343, 50) == doctest::Approx(0.12356).epsilon(1e-4));
    SplitMix64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const double p = rng.next_double();
        CHECK(link_prob(p, 1) == doctest::Approx(p).epsilon(1e-15));
        CHECK(link_prob(0.0, 1 + static_cast<std::uint32_t>(rng.next_below(1000))) == 0.0);
    }
    CHECK(link_prob(1.0, 3) == 1.0);
    CHECK_THROWS_AS(link_prob(0.5, 0), Error);
    CHECK_THROWS_AS(link_prob(-0.1, 5), Error);
    CHECK_THROWS_AS(link_prob(1.1, 5), Error);

    SUBCASE("nondecreasing in n_p") {
        for (int i = 0; i < 200; ++i) {
            const double p = rng.next_double();
            const std::uint32_t np = 2 + static_cast<std::uint32_t>(rng.next_below(500));
            CHECK(link_prob(p, np) >= link_prob(p, np - 1));
        }
    }
}

TEST_CASE("link_prob agrees with a Bernoulli simulation within 3 standard errors") {
    SplitMix64 rng(20240801);
    const std::size_t trials = 1000000;
    for (const double p : {0.001, 0.01, 0.1}) {
        for (const std::uint32_t np : {1u, 50u, 1000u}) {
            const double expected = link_prob(p, np);
            // Direct at-least-one-success simulation via geometric skipping:
            // per trial, success count > 0 iff the first success index < np.
            std::size_t successes = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                // first success position ~ Geometric(p)
                const double u = rng.next_double();
                const double first = std::floor(std::log1p(-u) / std::log1p(-p));
                if (first < static_cast<double>(np)) ++successes;
            }
            const double freq = static_cast<double>(successes) / trials;
            const double se = std::sqrt(expected * (1.0 - expected) / trials);
            CHECK(std::abs(freq - expected) <= 3.0 * se + 1e-12);
        }
    }
}
