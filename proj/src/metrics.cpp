#include "qnet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/graphcore.hpp"

namespace qnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// CDF of the fitted log-normal at k + 1/2, conditioned on k >= 1 (mass below
// 1/2 is cut away). sigma == 0 degenerates to a point mass at e^mu.
double lognormal_cond_cdf(double k_plus_half, double mu, double sigma) {
    if (sigma == 0.0) return std::log(k_plus_half) >= mu ? 1.0 : 0.0;
    const double base = normal_cdf((std::log(0.5) - mu) / sigma);
    const double raw = normal_cdf((std::log(k_plus_half) - mu) / sigma);
    return (raw - base) / (1.0 - base);
}

double ks_against_histogram(const std::vector<std::uint64_t>& histogram,
                            const std::vector<double>& model_cond_cdf) {
    // Empirical CDF of degrees restricted to k >= 1.
    std::uint64_t total = 0;
    for (std::size_t k = 1; k < histogram.size(); ++k) total += histogram[k];
    if (total == 0) fail(Errc::degenerate_input, "histogram has no nodes with degree >= 1");
    double ks = 0.0;
    std::uint64_t cum = 0;
    for (std::size_t k = 1; k < histogram.size(); ++k) {
        cum += histogram[k];
        const double emp = static_cast<double>(cum) / static_cast<double>(total);
        ks = std::max(ks, std::abs(emp - model_cond_cdf[k]));
    }
    return ks;
}

}  // namespace

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    std::uint32_t kmax = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) kmax = std::max(kmax, g.degree(v));
    s.histogram.assign(static_cast<std::size_t>(kmax) + 1, 0);
    std::uint64_t sum = 0, sum2 = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        const std::uint64_t k = g.degree(v);
        ++s.histogram[k];
        sum += k;
        sum2 += k * k;
    }
    s.mean = static_cast<double>(sum) / static_cast<double>(g.n);
    s.second_moment = static_cast<double>(sum2) / static_cast<double>(g.n);
    return s;
}

double lognormal_pdf(double k, double mu, double sigma) {
    if (!(k > 0.0) || !(sigma > 0.0)) fail(Errc::invalid_parameter, "lognormal_pdf needs k > 0, sigma > 0");
    const double z = (std::log(k) - mu) / sigma;
    return std::exp(-0.5 * z * z) / (k * sigma * std::sqrt(2.0 * kPi));
}

double lognormal_ks(const std::vector<std::uint64_t>& histogram, double mu, double sigma) {
    std::vector<double> cdf(histogram.size());
    for (std::size_t k = 1; k < histogram.size(); ++k) {
        cdf[k] = lognormal_cond_cdf(static_cast<double>(k) + 0.5, mu, sigma);
    }
    return ks_against_histogram(histogram, cdf);
}

double poisson_ks(const std::vector<std::uint64_t>& histogram, double lambda) {
    if (!(lambda > 0.0)) fail(Errc::invalid_parameter, "poisson_ks needs lambda > 0");
    std::vector<double> cdf(histogram.size());
    // pmf accumulated iteratively; conditioned on k >= 1.
    const double p0 = std::exp(-lambda);
    double pmf = p0;
    double cum = 0.0;
    for (std::size_t k = 1; k < histogram.size(); ++k) {
        pmf *= lambda / static_cast<double>(k);
        cum += pmf;
        cdf[k] = cum / (1.0 - p0);
    }
    return ks_against_histogram(histogram, cdf);
}

LogNormalFit lognormal_fit(double k_mean, double k2_mean, const std::vector<std::uint64_t>& histogram) {
    if (!(k_mean > 0.0)) fail(Errc::degenerate_input, "mean degree must be > 0 for a log-normal fit");
    if (k2_mean < k_mean * k_mean) fail(Errc::invalid_parameter, "<k^2> < <k>^2");
    LogNormalFit fit;
    fit.mu = std::log(k_mean * k_mean / std::sqrt(k2_mean));
    fit.sigma = std::sqrt(std::log(k2_mean / (k_mean * k_mean)));
    fit.ks_distance = lognormal_ks(histogram, fit.mu, fit.sigma);
    return fit;
}

PathStats path_stats(const Graph& g) {
    const ComponentPartition part = components(g);
    if (part.giant_size < 2) fail(Errc::degenerate_input, "giant cluster smaller than 2 nodes");
    PathStats ps;
    ps.giant_size = part.giant_size;
    std::uint64_t hop_sum = 0;
    std::uint32_t dmax = 0;
    for (std::uint32_t src = 0; src < g.n; ++src) {
        if (part.component_id[src] != part.giant_id) continue;
        const auto dist = bfs_distances(g, src);
        for (std::uint32_t v = 0; v < g.n; ++v) {
            if (v == src || part.component_id[v] != part.giant_id) continue;
            hop_sum += dist[v];
            dmax = std::max(dmax, dist[v]);
        }
    }
    // hop_sum counts ordered pairs, i.e. each unordered pair twice.
    const double pairs = static_cast<double>(ps.giant_size) * (static_cast<double>(ps.giant_size) - 1.0);
    ps.avg_shortest_path = static_cast<double>(hop_sum) / pairs;
    ps.diameter = dmax;
    return ps;
}

double avg_shortest_path(const Graph& g) { return path_stats(g).avg_shortest_path; }

std::uint32_t diameter(const Graph& g) { return path_stats(g).diameter; }

double avg_clustering(const Graph& g) {
    std::vector<std::uint8_t> mark(g.n, 0);
    double sum = 0.0;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        const std::uint32_t k = g.degree(i);
        if (k < 2) continue;
        for (const std::uint32_t j : g.adj[i]) mark[j] = 1;
        std::uint64_t wedges = 0;  // ordered neighbor pairs that are linked
        for (const std::uint32_t j : g.adj[i]) {
            for (const std::uint32_t w : g.adj[j]) {
                if (w != i && mark[w]) ++wedges;
            }
        }
        for (const std::uint32_t j : g.adj[i]) mark[j] = 0;
        const double links = static_cast<double>(wedges) / 2.0;  // n_i
        sum += 2.0 * links / (static_cast<double>(k) * (static_cast<double>(k) - 1.0));
    }
    return sum / static_cast<double>(g.n);
}

double kmed_closed_form(double rho, double radius_km) {
    if (!(rho > 0.0) || !(radius_km > 0.0)) fail(Errc::invalid_parameter, "rho and radius must be > 0");
    constexpr double mu = 2.73;
    constexpr double sigma = 0.126;
    const double amp = 4.5e5 * rho + 0.97;
    const double area = kPi * radius_km * radius_km;
    const double z = (std::log(std::log(area)) - mu) / sigma;
    return amp / (std::log(area) * sigma * std::sqrt(2.0 * kPi)) * std::exp(-0.5 * z * z);
}

double small_world_prediction(std::uint32_t n, double rho, double k_mean) {
    if (n < 2) fail(Errc::invalid_parameter, "n must be >= 2");
    if (!(rho > 0.0)) fail(Errc::invalid_parameter, "rho must be > 0");
    const double ratio = k_mean / rho;
    if (!(ratio > 1.0)) fail(Errc::invalid_parameter, "ln(<k>/rho) must be positive");
    const double c = std::exp(0.312 * std::pow(rho, -0.182));
    return c * std::log(static_cast<double>(n)) / std::log(ratio);
}

double connectivity_threshold(std::uint32_t n) {
    if (n < 2) fail(Errc::invalid_parameter, "n must be >= 2");
    const double base = std::exp(-17.0) * std::sqrt(static_cast<double>(n) / kPi);
    return std::pow(base, 2.0 / 3.0);
}

MetricReport measure(const Graph& g) {
    MetricReport r;
    const DegreeStats ds = degree_stats(g);
    r.mean_degree = ds.mean;
    r.second_moment = ds.second_moment;
    r.degree_histogram = ds.histogram;
    const ComponentPartition part = components(g);
    r.giant_fraction = static_cast<double>(part.giant_size) / static_cast<double>(g.n);
    if (part.giant_size >= 2) {
        const PathStats ps = path_stats(g);
        r.avg_shortest_path = ps.avg_shortest_path;
        r.diameter = ps.diameter;
    } else {
        r.avg_shortest_path = std::nan("");
        r.diameter = std::nan("");
    }
    r.avg_clustering = avg_clustering(g);
    if (ds.mean > 0.0) {
        const LogNormalFit fit = lognormal_fit(ds.mean, ds.second_moment, ds.histogram);
        r.lognormal_mu = fit.mu;
        r.lognormal_sigma = fit.sigma;
        r.lognormal_ks = fit.ks_distance;
    } else {
        r.lognormal_mu = std::nan("");
        r.lognormal_sigma = std::nan("");
        r.lognormal_ks = std::nan("");
    }
    return r;
}

}  // namespace qnet
