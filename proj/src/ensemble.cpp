#include "qnet/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "qnet/errors.hpp"

namespace qnet {

namespace {

constexpr std::size_t kFineGridSteps = 2000;  // internal f resolution for thresholds

void parallel_for(std::uint32_t count, int threads, const std::function<void(std::uint32_t)>& body) {
    unsigned want = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    want = std::max(1u, std::min<unsigned>(want, count));
    if (want == 1) {
        for (std::uint32_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned t = 0; t < want; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint32_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Neumaier-compensated sum in a fixed order.
double ordered_sum(const std::vector<double>& values) {
    double sum = 0.0, comp = 0.0;
    for (const double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

ScalarStat reduce(const std::vector<double>& values) {
    ScalarStat s;
    const std::size_t n = values.size();
    s.mean = ordered_sum(values) / static_cast<double>(n);
    if (n >= 2) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = values[i] - s.mean;
            sq[i] = d * d;
        }
        const double var = ordered_sum(sq) / static_cast<double>(n - 1);
        s.se = std::sqrt(var / static_cast<double>(n));
    }
    return s;
}

struct MetricNeeds {
    bool degrees = false;
    bool components = false;
    bool paths = false;
    bool clustering = false;
    bool lognormal = false;
};

MetricNeeds needs_for(std::span<const Metric> selectors, bool pooled) {
    MetricNeeds need;
    need.degrees = pooled;
    for (const Metric m : selectors) {
        switch (m) {
            case Metric::mean_degree:
            case Metric::second_moment: need.degrees = true; break;
            case Metric::giant_fraction: need.components = true; break;
            case Metric::avg_shortest_path:
            case Metric::diameter: need.paths = true; break;
            case Metric::avg_clustering: need.clustering = true; break;
            case Metric::lognormal_mu:
            case Metric::lognormal_sigma:
                need.degrees = true;
                need.lognormal = true;
                break;
        }
    }
    return need;
}

}  // namespace

const char* metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::mean_degree: return "mean_degree";
        case Metric::second_moment: return "second_moment";
        case Metric::giant_fraction: return "giant_fraction";
        case Metric::avg_shortest_path: return "avg_shortest_path";
        case Metric::diameter: return "diameter";
        case Metric::avg_clustering: return "avg_clustering";
        case Metric::lognormal_mu: return "lognormal_mu";
        case Metric::lognormal_sigma: return "lognormal_sigma";
    }
    return "?";
}

Metric metric_from_name(const std::string& name) {
    for (const Metric m : {Metric::mean_degree, Metric::second_moment, Metric::giant_fraction,
                           Metric::avg_shortest_path, Metric::diameter, Metric::avg_clustering,
                           Metric::lognormal_mu, Metric::lognormal_sigma}) {
        if (name == metric_name(m)) return m;
    }
    fail(Errc::constraint_violation, "unknown metric: " + name);
}

const ScalarStat& EnsembleResult::stat(Metric m) const {
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (metrics[i] == m) return stats[i];
    }
    fail(Errc::missing_column, std::string("metric not in ensemble: ") + metric_name(m));
}

EnsembleResult run_ensemble(const NetworkConfig& config, std::span<const Metric> selectors,
                            const EnsembleOptions& options) {
    if (options.realizations == 0) fail(Errc::invalid_parameter, "realizations must be >= 1");
    validate(config);
    const MetricNeeds need = needs_for(selectors, options.pooled_histogram);
    const std::uint32_t R = options.realizations;

    std::vector<std::vector<double>> rows(R);
    std::vector<std::vector<std::uint64_t>> hists(options.pooled_histogram ? R : 0);

    parallel_for(R, options.threads, [&](std::uint32_t r) {
        NetworkConfig cfg = config;
        cfg.seed = realization_seed(config.seed, r);
        try {
            const Graph g = generate(cfg);
            DegreeStats ds;
            if (need.degrees) ds = degree_stats(g);
            ComponentPartition part;
            if (need.components) part = components(g);
            PathStats ps;
            if (need.paths) ps = path_stats(g);
            LogNormalFit fit;
            if (need.lognormal) fit = lognormal_fit(ds.mean, ds.second_moment, ds.histogram);

            std::vector<double>& row = rows[r];
            row.reserve(selectors.size());
            for (const Metric m : selectors) {
                switch (m) {
                    case Metric::mean_degree: row.push_back(ds.mean); break;
                    case Metric::second_moment: row.push_back(ds.second_moment); break;
                    case Metric::giant_fraction:
                        row.push_back(static_cast<double>(part.giant_size) / g.n);
                        break;
                    case Metric::avg_shortest_path: row.push_back(ps.avg_shortest_path); break;
                    case Metric::diameter: row.push_back(ps.diameter); break;
                    case Metric::avg_clustering: row.push_back(avg_clustering(g)); break;
                    case Metric::lognormal_mu: row.push_back(fit.mu); break;
                    case Metric::lognormal_sigma: row.push_back(fit.sigma); break;
                }
            }
            if (options.pooled_histogram) hists[r] = std::move(ds.histogram);
        } catch (const Error& e) {
            throw Error(e.code(), "realization " + std::to_string(r) + ": " + e.what());
        }
    });

    EnsembleResult result;
    result.metrics.assign(selectors.begin(), selectors.end());
    result.realizations = R;
    std::vector<double> column(R);
    for (std::size_t m = 0; m < selectors.size(); ++m) {
        for (std::uint32_t r = 0; r < R; ++r) column[r] = rows[r][m];
        result.stats.push_back(reduce(column));
        if (options.keep_raw) result.raw.push_back(column);
    }
    if (options.pooled_histogram) {
        std::size_t kmax = 0;
        for (const auto& h : hists) kmax = std::max(kmax, h.size());
        result.pooled_histogram.assign(kmax, 0);
        unsigned __int128 sum = 0, sum2 = 0;
        for (const auto& h : hists) {
            for (std::size_t k = 0; k < h.size(); ++k) {
                result.pooled_histogram[k] += h[k];
                sum += static_cast<unsigned __int128>(h[k]) * k;
                sum2 += static_cast<unsigned __int128>(h[k]) * k * k;
            }
        }
        const double nodes = static_cast<double>(config.n) * R;
        result.pooled_mean_degree = static_cast<double>(sum) / nodes;
        result.pooled_second_moment = static_cast<double>(sum2) / nodes;
    }
    return result;
}

const char* protocol_name(Protocol p) noexcept {
    switch (p) {
        case Protocol::random_node: return "random_node";
        case Protocol::targeted: return "targeted";
        case Protocol::random_link: return "random_link";
        case Protocol::edge_cut: return "edge_cut";
    }
    return "?";
}

Protocol protocol_from_name(const std::string& name) {
    for (const Protocol p :
         {Protocol::random_node, Protocol::targeted, Protocol::random_link, Protocol::edge_cut}) {
        if (name == protocol_name(p)) return p;
    }
    fail(Errc::constraint_violation, "unknown protocol: " + name);
}

RobustnessEnsemble run_robustness_ensemble(const NetworkConfig& config, const RobustnessRunSpec& spec) {
    if (spec.realizations == 0) fail(Errc::invalid_parameter, "realizations must be >= 1");
    validate(config);
    const std::vector<double> grid = spec.f_grid.empty() ? default_f_grid() : spec.f_grid;
    const std::uint32_t R = spec.realizations;
    const std::size_t G = grid.size();
    const std::size_t F = kFineGridSteps + 1;

    struct PerRun {
        std::vector<double> ng_out, niso_out;    // at output grid
        std::vector<double> ng_fine, niso_fine;  // at fine grid
        double coverage = 1.0;
    };
    std::vector<PerRun> runs(R);

    parallel_for(R, spec.threads, [&](std::uint32_t r) {
        NetworkConfig cfg = config;
        cfg.seed = realization_seed(config.seed, r);
        try {
            const Graph g = generate(cfg);
            PerRun& run = runs[r];
            run.ng_out.resize(G);
            run.niso_out.resize(G);
            run.ng_fine.resize(F);
            run.niso_fine.resize(F);

            if (spec.protocol == Protocol::edge_cut) {
                const std::uint32_t giant0 = components(g).giant_size;
                SplitMix64 rng(substream_seed(cfg.seed, stream::pair_pick));
                const std::uint32_t budget =
                    spec.pair_budget > 0 ? spec.pair_budget : static_cast<std::uint32_t>(g.edge_count);
                const RobustnessCurve events = edge_cut_attack(g, rng, budget);
                const bool shattered = events.n_g.back() * giant0 < 1.5;
                run.coverage = shattered ? 1.0 : events.f_grid.back();
                // Step-function resampling: value of the last event at or
                // before f.
                const auto step_at = [&](double f, const std::vector<double>& ys) {
                    const auto it = std::upper_bound(events.f_grid.begin(), events.f_grid.end(), f);
                    const std::size_t idx = static_cast<std::size_t>(it - events.f_grid.begin());
                    return ys[idx == 0 ? 0 : idx - 1];
                };
                for (std::size_t i = 0; i < G; ++i) {
                    run.ng_out[i] = step_at(grid[i], events.n_g);
                    run.niso_out[i] = step_at(grid[i], events.n_iso);
                }
                for (std::size_t i = 0; i < F; ++i) {
                    const double f = static_cast<double>(i) / kFineGridSteps;
                    run.ng_fine[i] = step_at(f, events.n_g);
                    run.niso_fine[i] = step_at(f, events.n_iso);
                }
                return;
            }

            RemovalTrace trace;
            SplitMix64 rng(substream_seed(cfg.seed, stream::removal));
            switch (spec.protocol) {
                case Protocol::random_node:
                    trace = node_removal_trace(g, random_node_order(g.n, rng));
                    break;
                case Protocol::targeted:
                    trace = node_removal_trace(g, targeted_node_order(g, spec.mode));
                    break;
                case Protocol::random_link:
                    trace = link_removal_trace(g, random_edge_order(g.edge_count, rng));
                    break;
                case Protocol::edge_cut: break;  // handled above
            }
            for (std::size_t i = 0; i < G; ++i) {
                run.ng_out[i] = trace.ng_at(grid[i]);
                run.niso_out[i] = trace.niso_at(grid[i]);
            }
            for (std::size_t i = 0; i < F; ++i) {
                const double f = static_cast<double>(i) / kFineGridSteps;
                run.ng_fine[i] = trace.ng_at(f);
                run.niso_fine[i] = trace.niso_at(f);
            }
        } catch (const Error& e) {
            throw Error(e.code(), "realization " + std::to_string(r) + ": " + e.what());
        }
    });

    RobustnessEnsemble out;
    out.f_grid = grid;
    out.realizations = R;
    out.ng_mean.resize(G);
    out.ng_se.resize(G);
    out.niso_mean.resize(G);
    out.niso_se.resize(G);
    std::vector<double> column(R);
    for (std::size_t i = 0; i < G; ++i) {
        for (std::uint32_t r = 0; r < R; ++r) column[r] = runs[r].ng_out[i];
        const ScalarStat s = reduce(column);
        out.ng_mean[i] = s.mean;
        out.ng_se[i] = s.se;
    }
    for (std::size_t i = 0; i < G; ++i) {
        for (std::uint32_t r = 0; r < R; ++r) column[r] = runs[r].niso_out[i];
        const ScalarStat s = reduce(column);
        out.niso_mean[i] = s.mean;
        out.niso_se[i] = s.se;
    }

    std::vector<double> ng_fine(F, 0.0), niso_fine(F, 0.0);
    for (std::size_t i = 0; i < F; ++i) {
        for (std::uint32_t r = 0; r < R; ++r) column[r] = runs[r].ng_fine[i];
        ng_fine[i] = ordered_sum(column) / R;
        for (std::uint32_t r = 0; r < R; ++r) column[r] = runs[r].niso_fine[i];
        niso_fine[i] = ordered_sum(column) / R;
    }
    std::size_t best = F;
    for (std::size_t i = 0; i < F; ++i) {
        if (niso_fine[i] > 0.0 && (best == F || niso_fine[i] > niso_fine[best])) best = i;
    }
    if (best == F) {
        out.no_peak = true;
    } else {
        out.threshold.f_c = static_cast<double>(best) / kFineGridSteps;
        out.threshold.n_iso_peak = niso_fine[best];
        out.threshold.n_g_at_fc = ng_fine[best];
        out.threshold.crosscheck_ok = out.threshold.n_g_at_fc < 0.05;
    }
    for (std::size_t i = 0; i < F; ++i) {
        if (ng_fine[i] < 0.05) {
            out.f_ng_below = static_cast<double>(i) / kFineGridSteps;
            break;
        }
    }
    out.min_coverage = 1.0;
    for (const PerRun& run : runs) out.min_coverage = std::min(out.min_coverage, run.coverage);
    return out;
}

const char* axis_name(SweepAxis a) noexcept {
    switch (a) {
        case SweepAxis::n: return "n";
        case SweepAxis::rho: return "rho";
        case SweepAxis::n_p: return "n_p";
        case SweepAxis::radius: return "radius";
    }
    return "?";
}

SweepAxis axis_from_name(const std::string& name) {
    for (const SweepAxis a : {SweepAxis::n, SweepAxis::rho, SweepAxis::n_p, SweepAxis::radius}) {
        if (name == axis_name(a)) return a;
    }
    fail(Errc::constraint_violation, "unknown sweep axis: " + name);
}

NetworkConfig config_for_axis_value(const SweepSpec& spec, double value) {
    NetworkConfig cfg = spec.base;
    const auto as_count = [&](const char* what) {
        if (!(value >= 2.0) || value != std::floor(value) || value > 4.0e9) {
            fail(Errc::constraint_violation, std::string(what) + " axis values must be integers >= 2");
        }
        return static_cast<std::uint32_t>(value);
    };
    switch (spec.axis) {
        case SweepAxis::n:
            cfg.n = as_count("n");
            if (cfg.geometric()) {
                if (spec.base_has_rho) {
                    cfg.radius_km = std::nan("");
                } else {
                    cfg.rho = std::nan("");
                }
                resolve_geometry(cfg);
            }
            break;
        case SweepAxis::rho:
            cfg.rho = value;
            cfg.radius_km = std::nan("");
            resolve_geometry(cfg);
            break;
        case SweepAxis::radius:
            cfg.radius_km = value;
            cfg.rho = std::nan("");
            resolve_geometry(cfg);
            break;
        case SweepAxis::n_p:
            if (!(value >= 1.0) || value != std::floor(value)) {
                fail(Errc::constraint_violation, "n_p axis values must be integers >= 1");
            }
            cfg.n_p = static_cast<std::uint32_t>(value);
            break;
    }
    validate(cfg);
    return cfg;
}

SweepResult sweep(const SweepSpec& spec) {
    if (spec.values.empty()) fail(Errc::constraint_violation, "sweep values must be nonempty");
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) {
            fail(Errc::constraint_violation, "sweep values must be strictly increasing");
        }
    }
    SweepResult result;
    result.axis = spec.axis;
    EnsembleOptions opts;
    opts.realizations = spec.realizations;
    opts.threads = spec.threads;
    opts.pooled_histogram = spec.pooled_ks;
    for (const double value : spec.values) {
        SweepPoint point;
        point.axis_value = value;
        point.config = config_for_axis_value(spec, value);
        point.ensemble = run_ensemble(point.config, spec.metrics, opts);
        if (spec.pooled_ks) {
            const auto& hist = point.ensemble.pooled_histogram;
            const double kmean = point.ensemble.pooled_mean_degree;
            const double k2 = point.ensemble.pooled_second_moment;
            if (kmean > 0.0) {
                const double mu = std::log(kmean * kmean / std::sqrt(k2));
                const double sigma = std::sqrt(std::log(k2 / (kmean * kmean)));
                point.ks_lognormal = lognormal_ks(hist, mu, sigma);
                point.ks_poisson = poisson_ks(hist, kmean);
            }
        }
        result.points.push_back(std::move(point));
    }
    return result;
}

Table sweep_to_table(const SweepSpec& spec, const SweepResult& result) {
    Table t;
    t.columns = {"axis_value", "n", "rho", "radius_km", "n_p", "realizations"};
    for (const Metric m : spec.metrics) {
        t.columns.push_back(std::string(metric_name(m)) + "_mean");
        t.columns.push_back(std::string(metric_name(m)) + "_stderr");
    }
    if (spec.pooled_ks) {
        t.columns.push_back("ks_lognormal");
        t.columns.push_back("ks_poisson");
    }
    for (const SweepPoint& p : result.points) {
        std::vector<double> row;
        row.push_back(p.axis_value);
        row.push_back(p.config.n);
        row.push_back(p.config.rho);
        row.push_back(p.config.radius_km);
        row.push_back(p.config.n_p);
        row.push_back(p.ensemble.realizations);
        for (std::size_t i = 0; i < spec.metrics.size(); ++i) {
            row.push_back(p.ensemble.stats[i].mean);
            row.push_back(p.ensemble.stats[i].se);
        }
        if (spec.pooled_ks) {
            row.push_back(p.ks_lognormal);
            row.push_back(p.ks_poisson);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qnet
