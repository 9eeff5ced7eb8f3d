#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qnet/metrics.hpp"
#include "qnet/netgen.hpp"
#include "qnet/robustness.hpp"
#include "qnet/table.hpp"

namespace qnet {

enum class Metric {
    mean_degree,
    second_moment,
    giant_fraction,
    avg_shortest_path,
    diameter,
    avg_clustering,
    lognormal_mu,
    lognormal_sigma,
};

const char* metric_name(Metric m) noexcept;
Metric metric_from_name(const std::string& name);

struct ScalarStat {
    double mean = 0.0;
    double se = 0.0;  // standard error from the unbiased sample variance; 0 for R = 1
};

struct EnsembleOptions {
    std::uint32_t realizations = 1000;
    int threads = 0;  // <= 0: hardware concurrency
    bool keep_raw = false;
    bool pooled_histogram = false;
};

/// Ensemble-averaged metrics. Realization r uses seed realization_seed(
/// config.seed, r); results are reduced in realization order, so they are
/// bit-identical for any thread count.
struct EnsembleResult {
    std::vector<Metric> metrics;
    std::vector<ScalarStat> stats;             // parallel to metrics
    std::vector<std::vector<double>> raw;      // [metric][realization] when kept
    std::vector<std::uint64_t> pooled_histogram;
    double pooled_mean_degree = 0.0;
    double pooled_second_moment = 0.0;
    std::uint32_t realizations = 0;

    const ScalarStat& stat(Metric m) const;
};

EnsembleResult run_ensemble(const NetworkConfig& config, std::span<const Metric> selectors,
                            const EnsembleOptions& options);

// ---- removal-protocol ensembles ----

enum class Protocol { random_node, targeted, random_link, edge_cut };

const char* protocol_name(Protocol p) noexcept;
Protocol protocol_from_name(const std::string& name);

struct RobustnessRunSpec {
    Protocol protocol = Protocol::random_node;
    AttackMode mode = AttackMode::adaptive;
    std::uint32_t realizations = 1000;
    std::vector<double> f_grid;     // empty: default_f_grid()
    std::uint32_t pair_budget = 0;  // edge_cut only; 0 means "until shattered"
    int threads = 0;
};

/// Curves are averaged on the requested output grid; the critical threshold
/// is extracted from an internal fine grid (step 1/2000) of the ensemble
/// means, so it does not depend on the output grid resolution.
struct RobustnessEnsemble {
    std::vector<double> f_grid;
    std::vector<double> ng_mean, ng_se;
    std::vector<double> niso_mean, niso_se;
    ThresholdInfo threshold;
    bool no_peak = false;
    double f_ng_below = std::numeric_limits<double>::quiet_NaN();  // first f with <n_g> < 0.05
    double min_coverage = 1.0;  // edge_cut: smallest f up to which every realization has data
    std::uint32_t realizations = 0;
};

RobustnessEnsemble run_robustness_ensemble(const NetworkConfig& config, const RobustnessRunSpec& spec);

// ---- parameter sweeps ----

enum class SweepAxis { n, rho, n_p, radius };

const char* axis_name(SweepAxis a) noexcept;
SweepAxis axis_from_name(const std::string& name);

struct SweepSpec {
    NetworkConfig base;
    bool base_has_rho = true;  // which of rho/radius is primary when axis = n
    SweepAxis axis = SweepAxis::n;
    std::vector<double> values;  // strictly increasing, nonempty
    std::uint32_t realizations = 1000;
    std::vector<Metric> metrics;
    bool pooled_ks = false;  // add pooled-histogram KS columns
    bool collapse_kmed = false;
    int threads = 0;
};

struct SweepPoint {
    double axis_value = 0.0;
    NetworkConfig config;
    EnsembleResult ensemble;
    double ks_lognormal = std::numeric_limits<double>::quiet_NaN();
    double ks_poisson = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
    SweepAxis axis = SweepAxis::n;
    std::vector<SweepPoint> points;
};

/// Resolves the per-point config (re-deriving radius or rho as needed).
NetworkConfig config_for_axis_value(const SweepSpec& spec, double value);

SweepResult sweep(const SweepSpec& spec);

/// One row per axis point: axis_value, n, rho, radius_km, n_p, realizations,
/// then <metric>_mean, <metric>_stderr pairs, then pooled KS columns when
/// enabled. NaN cells serialize as "na".
Table sweep_to_table(const SweepSpec& spec, const SweepResult& result);

}  // namespace qnet
