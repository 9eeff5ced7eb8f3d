// qnet: generate photonic quantum-network graphs, measure them, sweep
// parameters, and run failure/attack protocols. Batch-oriented: every command
// reads a JSON config and writes CSV/JSON results into --out.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnet/config_io.hpp"
#include "qnet/ensemble.hpp"
#include "qnet/errors.hpp"
#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/table.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> realizations;
    std::optional<std::uint64_t> threads;
    std::vector<std::string> sets;
};

// Temp file plus rename, so readers never observe partial output.
void write_file_atomic(const fs::path& dir, const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) qnet::fail(qnet::Errc::io_error, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) qnet::fail(qnet::Errc::io_error, "write failed: " + tmp.string());
    }
    fs::rename(tmp, dir / name, ec);
    if (ec) qnet::fail(qnet::Errc::io_error, "rename failed: " + (dir / name).string());
}

json load_config(const GlobalArgs& args, bool nested_base) {
    if (args.config_path.empty()) qnet::fail(qnet::Errc::missing_input, "--config is required");
    json doc = qnet::load_json_file(args.config_path);
    qnet::apply_overrides(doc, args.sets);
    if (args.seed) {
        if (nested_base) {
            doc["base"]["seed"] = *args.seed;
        } else {
            doc["seed"] = *args.seed;
        }
    }
    if (args.realizations) doc["realizations"] = *args.realizations;
    if (args.threads) doc["threads"] = *args.threads;
    return doc;
}

std::string metrics_csv(const std::string& model, std::uint32_t n, std::uint64_t seed,
                        const qnet::MetricReport& r) {
    std::ostringstream os;
    os << "model,n,seed,mean_degree,second_moment,giant_fraction,avg_shortest_path,diameter,"
          "avg_clustering,lognormal_mu,lognormal_sigma,lognormal_ks\n";
    os << model << ',' << n << ',' << seed;
    for (const double v : {r.mean_degree, r.second_moment, r.giant_fraction, r.avg_shortest_path,
                           r.diameter, r.avg_clustering, r.lognormal_mu, r.lognormal_sigma,
                           r.lognormal_ks}) {
        os << ',' << qnet::format_g10(v);
    }
    os << "\n";
    return os.str();
}

std::string histogram_csv(const std::vector<std::uint64_t>& hist) {
    std::ostringstream os;
    os << "k,count\n";
    for (std::size_t k = 0; k < hist.size(); ++k) os << k << ',' << hist[k] << "\n";
    return os.str();
}

int cmd_generate(const GlobalArgs& args) {
    const qnet::NetworkConfig cfg = qnet::parse_network_config(load_config(args, false));
    const qnet::Graph g = qnet::generate(cfg);
    std::ostringstream os;
    qnet::write_edge_list(os, g, qnet::model_name(cfg.model), cfg.seed);
    write_file_atomic(args.out_dir, "graph.edges", os.str());
    std::fprintf(stderr, "generate: n=%u edges=%zu giant=%u -> %s/graph.edges\n", g.n, g.edge_count,
                 qnet::components(g).giant_size, args.out_dir.c_str());
    return 0;
}

int cmd_metrics(const GlobalArgs& args, const std::string& graph_path) {
    std::string model;
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    qnet::MetricReport report;
    if (!graph_path.empty()) {
        std::ifstream in(graph_path);
        if (!in) qnet::fail(qnet::Errc::missing_input, "cannot open " + graph_path);
        const qnet::LoadedGraph lg = qnet::read_edge_list(in);
        model = lg.model;
        n = lg.graph.n;
        seed = lg.seed;
        report = qnet::measure(lg.graph);
    } else {
        const qnet::NetworkConfig cfg = qnet::parse_network_config(load_config(args, false));
        const qnet::Graph g = qnet::generate(cfg);
        model = qnet::model_name(cfg.model);
        n = g.n;
        seed = cfg.seed;
        report = qnet::measure(g);
    }
    write_file_atomic(args.out_dir, "metrics.csv", metrics_csv(model, n, seed, report));
    write_file_atomic(args.out_dir, "degree_hist.csv", histogram_csv(report.degree_histogram));
    return 0;
}

int cmd_sweep(const GlobalArgs& args) {
    const json doc = load_config(args, true);
    const qnet::SweepSpec spec = qnet::parse_sweep_spec(doc);
    const qnet::SweepResult result = qnet::sweep(spec);
    qnet::Table table = qnet::sweep_to_table(spec, result);
    if (spec.collapse_kmed) table = qnet::data_collapse(table, qnet::CollapseMode::kmed);
    write_file_atomic(args.out_dir, "sweep.csv", qnet::to_csv(table));

    json sidecar;
    sidecar["axis"] = qnet::axis_name(spec.axis);
    sidecar["values"] = spec.values;
    sidecar["realizations"] = spec.realizations;
    json names = json::array();
    for (const qnet::Metric m : spec.metrics) names.push_back(qnet::metric_name(m));
    sidecar["metrics"] = names;
    sidecar["pooled_ks"] = spec.pooled_ks;
    sidecar["collapse"] = spec.collapse_kmed ? "kmed" : "";
    sidecar["base"] = qnet::resolved_config_json(spec.base);
    json points = json::array();
    for (const auto& p : result.points) {
        points.push_back({{"axis_value", p.axis_value},
                          {"n", p.config.n},
                          {"rho", p.config.rho},
                          {"radius_km", p.config.radius_km},
                          {"n_p", p.config.n_p}});
    }
    sidecar["points"] = points;
    write_file_atomic(args.out_dir, "sweep_config.json", sidecar.dump(2) + "\n");
    return 0;
}

int cmd_robustness(const GlobalArgs& args) {
    const qnet::RobustnessJob job = qnet::parse_robustness_spec(load_config(args, true));
    const qnet::RobustnessEnsemble ens = qnet::run_robustness_ensemble(job.base, job.spec);

    qnet::Table t;
    t.columns = {"f", "n_g_mean", "n_g_stderr", "n_iso_mean", "n_iso_stderr"};
    for (std::size_t i = 0; i < ens.f_grid.size(); ++i) {
        t.rows.push_back({ens.f_grid[i], ens.ng_mean[i], ens.ng_se[i], ens.niso_mean[i], ens.niso_se[i]});
    }
    write_file_atomic(args.out_dir, "robustness.csv", qnet::to_csv(t));

    json summary;
    summary["protocol"] = qnet::protocol_name(job.spec.protocol);
    summary["realizations"] = ens.realizations;
    summary["no_peak"] = ens.no_peak;
    if (!ens.no_peak) {
        summary["f_c"] = ens.threshold.f_c;
        summary["n_iso_peak"] = ens.threshold.n_iso_peak;
        summary["n_g_at_fc"] = ens.threshold.n_g_at_fc;
        summary["crosscheck_ok"] = ens.threshold.crosscheck_ok;
    }
    if (std::isfinite(ens.f_ng_below)) summary["f_ng_below_005"] = ens.f_ng_below;
    if (job.spec.protocol == qnet::Protocol::edge_cut) summary["min_coverage_f"] = ens.min_coverage;
    summary["config"] = qnet::resolved_config_json(job.base);
    write_file_atomic(args.out_dir, "robustness_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_fitcheck(const GlobalArgs& args) {
    const qnet::FitcheckSpec spec = qnet::parse_fitcheck_spec(load_config(args, true));
    std::ifstream in(spec.input);
    if (!in) qnet::fail(qnet::Errc::missing_input, "cannot open " + spec.input);
    const qnet::Table sweep_table = qnet::read_csv(in);
    if (sweep_table.rows.empty()) qnet::fail(qnet::Errc::missing_input, spec.input + " has no data rows");

    qnet::Table t;
    t.columns = {"n", "rho", "k_measured", "k_predicted", "k_rel_dev",
                 "l_measured", "l_predicted", "l_rel_dev", "pass"};
    double max_k_dev = 0.0, max_l_dev = 0.0;
    bool all_pass = true;
    for (std::size_t i = 0; i < sweep_table.rows.size(); ++i) {
        const double n = sweep_table.at(i, "n");
        const double rho = sweep_table.at(i, "rho");
        const double radius = sweep_table.at(i, "radius_km");
        const double k_meas = sweep_table.at(i, "mean_degree_mean");
        const double l_meas = sweep_table.at(i, "avg_shortest_path_mean");
        const double k_pred = qnet::kmed_closed_form(rho, radius);
        const double l_pred = qnet::small_world_prediction(static_cast<std::uint32_t>(n), rho, k_meas);
        const double k_dev = std::abs(k_meas - k_pred) / k_pred;
        const double l_dev = std::abs(l_meas - l_pred) / l_pred;
        const bool pass = k_dev <= spec.tol_k && l_dev <= spec.tol_l;
        max_k_dev = std::max(max_k_dev, k_dev);
        max_l_dev = std::max(max_l_dev, l_dev);
        all_pass = all_pass && pass;
        t.rows.push_back({n, rho, k_meas, k_pred, k_dev, l_meas, l_pred, l_dev, pass ? 1.0 : 0.0});
    }
    write_file_atomic(args.out_dir, "fitcheck.csv", qnet::to_csv(t));

    json summary;
    summary["input"] = spec.input;
    summary["tol_k"] = spec.tol_k;
    summary["tol_l"] = spec.tol_l;
    summary["points"] = t.rows.size();
    summary["max_k_rel_dev"] = max_k_dev;
    summary["max_l_rel_dev"] = max_l_dev;
    summary["all_pass"] = all_pass;
    write_file_atomic(args.out_dir, "fitcheck_summary.json", summary.dump(2) + "\n");
    std::fprintf(stderr, "fitcheck: %s (max k dev %.3f, max l dev %.3f)\n",
                 all_pass ? "PASS" : "FAIL", max_k_dev, max_l_dev);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photonic quantum-network simulator and analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs args;
    app.add_option("--config", args.config_path, "JSON configuration file");
    app.add_option("--out", args.out_dir, "output directory (created if missing)");
    app.add_option("--seed", args.seed, "override the config seed");
    app.add_option("--realizations", args.realizations, "override the realization count");
    app.add_option("--threads", args.threads, "worker threads (default: machine parallelism)");
    app.add_option("--set", args.sets, "override a config key (key=value, repeatable)");

    auto* c_generate = app.add_subcommand("generate", "write one graph realization as an edge list");
    auto* c_metrics = app.add_subcommand("metrics", "structural metrics of one realization");
    std::string graph_path;
    c_metrics->add_option("--graph", graph_path, "measure an existing edge-list file instead");
    auto* c_sweep = app.add_subcommand("sweep", "ensemble-averaged metrics along a parameter axis");
    auto* c_robustness = app.add_subcommand("robustness", "failure/attack protocol curves and f_c");
    auto* c_fitcheck = app.add_subcommand("fitcheck", "compare a sweep against the fitted closed forms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_generate->parsed()) return cmd_generate(args);
        if (c_metrics->parsed()) return cmd_metrics(args, graph_path);
        if (c_sweep->parsed()) return cmd_sweep(args);
        if (c_robustness->parsed()) return cmd_robustness(args);
        if (c_fitcheck->parsed()) return cmd_fitcheck(args);
    } catch (const qnet::Error& e) {
        std::cerr << "qnet: " << e.what() << "\n";
        return e.is_config_error() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "qnet: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
