#pragma once

#include <cstdint>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

/// Exact degree moments over all nodes (isolated ones included) plus the raw
/// histogram: histogram[k] = number of nodes with degree k.
struct DegreeStats {
    double mean = 0.0;
    double second_moment = 0.0;
    std::vector<std::uint64_t> histogram;
};

DegreeStats degree_stats(const Graph& g);

/// Log-normal moment fit: mu = ln(<k>^2 / sqrt(<k^2>)),
/// sigma = sqrt(ln(<k^2> / <k>^2)).
struct LogNormalFit {
    double mu = 0.0;
    double sigma = 0.0;
    double ks_distance = 0.0;
};

/// Moment-matched fit; ks_distance compares the fitted CDF (evaluated at
/// k + 1/2) against the histogram restricted to k >= 1.
LogNormalFit lognormal_fit(double k_mean, double k2_mean, const std::vector<std::uint64_t>& histogram);

double lognormal_pdf(double k, double mu, double sigma);

/// KS distances of the k>=1 part of a degree histogram against the
/// conditional (k>=1) model CDFs.
double lognormal_ks(const std::vector<std::uint64_t>& histogram, double mu, double sigma);
double poisson_ks(const std::vector<std::uint64_t>& histogram, double lambda);

/// Shortest-path statistics restricted to the giant cluster, by BFS from
/// every giant node. Requires giant_size >= 2.
struct PathStats {
    double avg_shortest_path = 0.0;
    std::uint32_t diameter = 0;
    std::uint32_t giant_size = 0;
};

PathStats path_stats(const Graph& g);
double avg_shortest_path(const Graph& g);
std::uint32_t diameter(const Graph& g);

/// Mean local clustering coefficient; c_i = 0 for nodes with degree < 2.
double avg_clustering(const Graph& g);

/// Fitted closed form for the satellite-model mean degree as a function of
/// node density and coverage radius.
double kmed_closed_form(double rho, double radius_km);

/// Small-world fit c(rho) * ln(n) / ln(k_mean / rho), c(rho) = e^(0.312 rho^-0.182).
double small_world_prediction(std::uint32_t n, double rho, double k_mean);

/// Density above which the satellite network stays connected:
/// rho_c = (e^-17 sqrt(n/pi))^(2/3).
double connectivity_threshold(std::uint32_t n);

/// All per-realization structural metrics in one pass.
struct MetricReport {
    double mean_degree = 0.0;
    double second_moment = 0.0;
    double giant_fraction = 0.0;
    double avg_shortest_path = 0.0;  // NaN when giant < 2
    double diameter = 0.0;           // NaN when giant < 2
    double avg_clustering = 0.0;
    double lognormal_mu = 0.0;       // NaN for empty graphs
    double lognormal_sigma = 0.0;
    double lognormal_ks = 0.0;
    std::vector<std::uint64_t> degree_histogram;
};

MetricReport measure(const Graph& g);

}  // namespace qnet
