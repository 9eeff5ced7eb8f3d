#include "qnet/config_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "qnet/errors.hpp"

namespace qnet {

using nlohmann::json;

namespace {

void ensure_keys(const json& obj, const char* ctx, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(Errc::parse_error, std::string(ctx) + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail(Errc::unknown_key, std::string(ctx) + "." + item.key());
    }
}

double get_number(const json& obj, const char* key, const char* ctx, double def, bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail(Errc::constraint_violation, std::string(ctx) + "." + key + " is required");
        return def;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) fail(Errc::constraint_violation, std::string(ctx) + "." + key + " must be a number");
    return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const char* key, const char* ctx, std::uint64_t def,
                       bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail(Errc::constraint_violation, std::string(ctx) + "." + key + " is required");
        return def;
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(Errc::constraint_violation, std::string(ctx) + "." + key + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const char* ctx, const std::string& def,
                       bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail(Errc::constraint_violation, std::string(ctx) + "." + key + " is required");
        return def;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) fail(Errc::constraint_violation, std::string(ctx) + "." + key + " must be a string");
    return v.get<std::string>();
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::missing_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(Errc::parse_error, path + ": " + e.what());
    }
}

void apply_overrides(json& doc, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail(Errc::constraint_violation, "--set expects key=value, got '" + kv + "'");
        }
        const std::string path = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;  // plain string (e.g. model names)
        }
        json* node = &doc;
        std::size_t start = 0;
        for (;;) {
            const std::size_t dot = path.find('.', start);
            const std::string key = path.substr(start, dot - start);
            if (key.empty()) fail(Errc::constraint_violation, "bad --set path '" + path + "'");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            start = dot + 1;
        }
    }
}

NetworkConfig parse_network_config(const json& doc) {
    ensure_keys(doc, "config",
                {"model", "n", "rho", "radius_km", "n_p", "seed", "sat", "fiber", "er_mean_degree",
                 "ba_m"});
    NetworkConfig cfg;
    cfg.model = model_from_name(get_string(doc, "model", "config", "", true));
    const std::uint64_t n = get_uint(doc, "n", "config", 0, true);
    if (n < 2 || n > 0xFFFFFFFFull) fail(Errc::constraint_violation, "config.n must be in [2, 2^32)");
    cfg.n = static_cast<std::uint32_t>(n);
    cfg.seed = get_uint(doc, "seed", "config", 0);
    const std::uint64_t n_p = get_uint(doc, "n_p", "config", 50);
    if (n_p < 1 || n_p > 0xFFFFFFFFull) fail(Errc::constraint_violation, "config.n_p must be in [1, 2^32)");
    cfg.n_p = static_cast<std::uint32_t>(n_p);

    if (cfg.geometric()) {
        cfg.rho = get_number(doc, "rho", "config", std::nan(""));
        cfg.radius_km = get_number(doc, "radius_km", "config", std::nan(""));
        resolve_geometry(cfg);
        if (doc.contains("sat")) {
            const json& s = doc.at("sat");
            ensure_keys(s, "config.sat", {"h_sat_km", "eta0", "r_rec_m", "beam_coeff"});
            cfg.sat.h_sat_km = get_number(s, "h_sat_km", "config.sat", cfg.sat.h_sat_km);
            cfg.sat.eta0 = get_number(s, "eta0", "config.sat", cfg.sat.eta0);
            cfg.sat.r_rec_m = get_number(s, "r_rec_m", "config.sat", cfg.sat.r_rec_m);
            cfg.sat.beam_coeff = get_number(s, "beam_coeff", "config.sat", cfg.sat.beam_coeff);
        }
        if (doc.contains("fiber")) {
            const json& f = doc.at("fiber");
            ensure_keys(f, "config.fiber", {"alpha_db_per_km"});
            cfg.fiber.alpha_db_per_km = get_number(f, "alpha_db_per_km", "config.fiber",
                                                   cfg.fiber.alpha_db_per_km);
        }
    } else {
        for (const char* key : {"rho", "radius_km", "sat", "fiber"}) {
            if (doc.contains(key)) {
                fail(Errc::constraint_violation,
                     std::string("config.") + key + " only applies to geometric models");
            }
        }
    }

    if (cfg.model == ModelKind::er) {
        cfg.er_mean_degree = get_number(doc, "er_mean_degree", "config", std::nan(""), true);
    } else if (doc.contains("er_mean_degree")) {
        fail(Errc::constraint_violation, "config.er_mean_degree only applies to the er model");
    }
    if (cfg.model == ModelKind::ba) {
        const std::uint64_t m = get_uint(doc, "ba_m", "config", 0, true);
        if (m < 1 || m >= cfg.n) fail(Errc::constraint_violation, "config.ba_m must be in [1, n)");
        cfg.ba_m = static_cast<std::uint32_t>(m);
    } else if (doc.contains("ba_m")) {
        fail(Errc::constraint_violation, "config.ba_m only applies to the ba model");
    }

    validate(cfg);
    return cfg;
}

SweepSpec parse_sweep_spec(const json& doc) {
    ensure_keys(doc, "sweep",
                {"base", "axis", "values", "realizations", "metrics", "pooled_ks", "collapse",
                 "threads"});
    if (!doc.contains("base")) fail(Errc::constraint_violation, "sweep.base is required");
    SweepSpec spec;
    spec.base = parse_network_config(doc.at("base"));
    spec.base_has_rho = spec.base.rho_primary;
    spec.axis = axis_from_name(get_string(doc, "axis", "sweep", "", true));
    if (!doc.contains("values") || !doc.at("values").is_array() || doc.at("values").empty()) {
        fail(Errc::constraint_violation, "sweep.values must be a nonempty array");
    }
    for (const auto& v : doc.at("values")) {
        if (!v.is_number()) fail(Errc::constraint_violation, "sweep.values must be numbers");
        spec.values.push_back(v.get<double>());
    }
    const std::uint64_t reals = get_uint(doc, "realizations", "sweep", 1000);
    if (reals < 1) fail(Errc::constraint_violation, "sweep.realizations must be >= 1");
    spec.realizations = static_cast<std::uint32_t>(reals);
    if (doc.contains("metrics")) {
        if (!doc.at("metrics").is_array()) fail(Errc::constraint_violation, "sweep.metrics must be an array");
        for (const auto& m : doc.at("metrics")) {
            if (!m.is_string()) fail(Errc::constraint_violation, "sweep.metrics entries must be strings");
            spec.metrics.push_back(metric_from_name(m.get<std::string>()));
        }
    } else {
        spec.metrics = {Metric::mean_degree, Metric::giant_fraction};
    }
    if (doc.contains("pooled_ks")) {
        if (!doc.at("pooled_ks").is_boolean()) fail(Errc::constraint_violation, "sweep.pooled_ks must be a bool");
        spec.pooled_ks = doc.at("pooled_ks").get<bool>();
    }
    if (doc.contains("collapse")) {
        const std::string mode = get_string(doc, "collapse", "sweep", "");
        if (mode != "kmed") fail(Errc::constraint_violation, "sweep.collapse must be \"kmed\"");
        spec.collapse_kmed = true;
    }
    spec.threads = static_cast<int>(get_uint(doc, "threads", "sweep", 0));
    return spec;
}

RobustnessJob parse_robustness_spec(const json& doc) {
    ensure_keys(doc, "robustness",
                {"base", "protocol", "attack_mode", "realizations", "f_step", "pair_budget",
                 "threads"});
    if (!doc.contains("base")) fail(Errc::constraint_violation, "robustness.base is required");
    RobustnessJob job;
    job.base = parse_network_config(doc.at("base"));
    job.spec.protocol = protocol_from_name(get_string(doc, "protocol", "robustness", "", true));
    const std::string mode = get_string(doc, "attack_mode", "robustness", "adaptive");
    if (mode == "adaptive") {
        job.spec.mode = AttackMode::adaptive;
    } else if (mode == "initial_degree") {
        job.spec.mode = AttackMode::initial_degree;
    } else {
        fail(Errc::constraint_violation, "robustness.attack_mode must be adaptive|initial_degree");
    }
    const std::uint64_t reals = get_uint(doc, "realizations", "robustness", 1000);
    if (reals < 1) fail(Errc::constraint_violation, "robustness.realizations must be >= 1");
    job.spec.realizations = static_cast<std::uint32_t>(reals);
    const double f_step = get_number(doc, "f_step", "robustness", 0.01);
    if (!(f_step > 0.0 && f_step <= 0.5)) fail(Errc::constraint_violation, "robustness.f_step must be in (0, 0.5]");
    const int steps = static_cast<int>(std::llround(1.0 / f_step));
    for (int i = 0; i <= steps; ++i) {
        job.spec.f_grid.push_back(std::min(1.0, static_cast<double>(i) * f_step));
    }
    job.spec.pair_budget = static_cast<std::uint32_t>(get_uint(doc, "pair_budget", "robustness", 0));
    job.spec.threads = static_cast<int>(get_uint(doc, "threads", "robustness", 0));
    return job;
}

FitcheckSpec parse_fitcheck_spec(const json& doc) {
    ensure_keys(doc, "fitcheck", {"input", "tol_k", "tol_l"});
    FitcheckSpec spec;
    spec.input = get_string(doc, "input", "fitcheck", "", true);
    spec.tol_k = get_number(doc, "tol_k", "fitcheck", 0.25);
    spec.tol_l = get_number(doc, "tol_l", "fitcheck", 0.20);
    if (!(spec.tol_k > 0.0) || !(spec.tol_l > 0.0)) {
        fail(Errc::constraint_violation, "fitcheck tolerances must be > 0");
    }
    return spec;
}

json resolved_config_json(const NetworkConfig& cfg) {
    json doc;
    doc["model"] = model_name(cfg.model);
    doc["n"] = cfg.n;
    doc["n_p"] = cfg.n_p;
    doc["seed"] = cfg.seed;
    if (cfg.geometric()) {
        if (cfg.rho_primary) {
            doc["rho"] = cfg.rho;
        } else {
            doc["radius_km"] = cfg.radius_km;
        }
        doc["sat"] = {{"h_sat_km", cfg.sat.h_sat_km},
                      {"eta0", cfg.sat.eta0},
                      {"r_rec_m", cfg.sat.r_rec_m},
                      {"beam_coeff", cfg.sat.beam_coeff}};
        doc["fiber"] = {{"alpha_db_per_km", cfg.fiber.alpha_db_per_km}};
    }
    if (cfg.model == ModelKind::er) doc["er_mean_degree"] = cfg.er_mean_degree;
    if (cfg.model == ModelKind::ba) doc["ba_m"] = cfg.ba_m;
    return doc;
}

}  // namespace qnet
