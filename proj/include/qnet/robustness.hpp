#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/graphcore.hpp"
#include "qnet/rng.hpp"

namespace qnet {

/// Sampled removal curve: n_g = <N_G(f)/N_G(0)>, n_iso = mean size of the
/// non-giant components. For the removal protocols f_grid is the requested
/// grid; for the edge-cut attack it is the event sequence of cumulative
/// removed-link fractions.
struct RobustnessCurve {
    std::vector<double> f_grid;
    std::vector<double> n_g;
    std::vector<double> n_iso;
    double f_c = std::numeric_limits<double>::quiet_NaN();
};

enum class AttackMode { adaptive, initial_degree };

/// Mean size of all components except the giant; 0 with a single component.
double n_iso(const ComponentPartition& part);

RobustnessCurve random_node_failure(const Graph& g, std::span<const double> f_grid, SplitMix64& rng);
RobustnessCurve targeted_attack(const Graph& g, std::span<const double> f_grid,
                                AttackMode mode = AttackMode::adaptive);
RobustnessCurve random_link_failure(const Graph& g, std::span<const double> f_grid, SplitMix64& rng);

/// Repeatedly disconnects a random giant-cluster pair by removing its minimum
/// edge cut; stops after pair_budget pairs or once the giant drops below 2.
RobustnessCurve edge_cut_attack(const Graph& g, SplitMix64& rng, std::uint32_t pair_budget);

struct ThresholdInfo {
    double f_c = 0.0;
    double n_iso_peak = 0.0;
    double n_g_at_fc = 0.0;
    bool crosscheck_ok = false;  // n_g(f_c) < 0.05
};

/// f_c = argmax of n_iso over the grid (ties: smallest f). Throws no-peak
/// when n_iso is identically zero.
ThresholdInfo critical_threshold(const RobustnessCurve& curve);

/// 0, 0.01, ..., 1.
std::vector<double> default_f_grid();

// ---- building blocks shared with the ensemble runner ----

/// Giant size and component count after each removal prefix, obtained by
/// replaying the removal order backwards through a union-find.
struct RemovalTrace {
    std::uint32_t n = 0;           // node count
    std::uint64_t total = 0;       // number of removable items (nodes or links)
    bool node_protocol = true;     // active node count shrinks with f
    std::uint32_t giant0 = 0;      // giant size of the intact graph
    std::vector<std::uint32_t> giant;  // [removed] for removed = 0..total
    std::vector<std::uint32_t> comps;  // component count among active nodes

    double ng_at(double f) const;
    double niso_at(double f) const;

private:
    std::size_t index_for(double f) const;
};

RemovalTrace node_removal_trace(const Graph& g, const std::vector<std::uint32_t>& order);
RemovalTrace link_removal_trace(const Graph& g, const std::vector<std::uint32_t>& edge_order);

std::vector<std::uint32_t> random_node_order(std::uint32_t n, SplitMix64& rng);
std::vector<std::uint32_t> targeted_node_order(const Graph& g, AttackMode mode);
std::vector<std::uint32_t> random_edge_order(std::size_t m, SplitMix64& rng);

RobustnessCurve curve_from_trace(const RemovalTrace& trace, std::span<const double> f_grid);

}  // namespace qnet
