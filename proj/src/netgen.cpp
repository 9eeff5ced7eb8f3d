#include "qnet/netgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/kernels/kernels.hpp"
#include "qnet/rng.hpp"

namespace qnet {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn10 = 2.30258509299404568402;

Graph assemble(std::uint32_t n, std::vector<std::vector<std::uint32_t>>& upper) {
    Graph g;
    g.n = n;
    g.adj.resize(n);
    std::vector<std::uint32_t> deg(n, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        deg[u] += static_cast<std::uint32_t>(upper[u].size());
        for (const std::uint32_t v : upper[u]) ++deg[v];
    }
    for (std::uint32_t u = 0; u < n; ++u) g.adj[u].reserve(deg[u]);
    // Row order keeps every adjacency list ascending without a sort pass:
    // lower neighbors arrive while processing earlier rows, then the row's
    // own upper neighbors.
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const std::uint32_t v : upper[u]) {
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
        g.edge_count += upper[u].size();
    }
    return g;
}

struct GeometricInputs {
    std::vector<NodePosition> positions;
    std::vector<double> xs, ys;
};

GeometricInputs place_nodes(const NetworkConfig& cfg) {
    SplitMix64 rng(substream_seed(cfg.seed, stream::positions));
    GeometricInputs in;
    in.positions = sample_positions(cfg.n, cfg.radius_km, rng);
    in.xs.resize(cfg.n);
    in.ys.resize(cfg.n);
    for (std::uint32_t i = 0; i < cfg.n; ++i) {
        in.xs[i] = in.positions[i].x;
        in.ys[i] = in.positions[i].y;
    }
    return in;
}

}  // namespace

const char* model_name(ModelKind m) noexcept {
    switch (m) {
        case ModelKind::sbqi: return "sbqi";
        case ModelKind::ofbqi: return "ofbqi";
        case ModelKind::er: return "er";
        case ModelKind::ba: return "ba";
    }
    return "?";
}

ModelKind model_from_name(const std::string& name) {
    std::string low;
    low.reserve(name.size());
    for (char c : name) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "sbqi") return ModelKind::sbqi;
    if (low == "ofbqi") return ModelKind::ofbqi;
    if (low == "er") return ModelKind::er;
    if (low == "ba") return ModelKind::ba;
    fail(Errc::constraint_violation, "unknown model: " + name);
}

void resolve_geometry(NetworkConfig& cfg) {
    const bool has_r = std::isfinite(cfg.radius_km);
    const bool has_rho = std::isfinite(cfg.rho);
    if (has_r == has_rho) {
        fail(Errc::constraint_violation, "exactly one of radius_km / rho must be given");
    }
    if (has_r) {
        if (!(cfg.radius_km > 0.0)) fail(Errc::constraint_violation, "radius_km must be > 0");
        cfg.rho = static_cast<double>(cfg.n) / (kPi * cfg.radius_km * cfg.radius_km);
        cfg.rho_primary = false;
    } else {
        if (!(cfg.rho > 0.0)) fail(Errc::constraint_violation, "rho must be > 0");
        cfg.radius_km = std::sqrt(static_cast<double>(cfg.n) / (kPi * cfg.rho));
        cfg.rho_primary = true;
    }
}

void validate(const NetworkConfig& cfg) {
    if (cfg.n < 2) fail(Errc::invalid_config, "n must be >= 2");
    if (cfg.n_p == 0) fail(Errc::invalid_config, "n_p must be >= 1");
    if (cfg.geometric()) {
        if (!std::isfinite(cfg.radius_km) || !std::isfinite(cfg.rho)) {
            fail(Errc::invalid_config, "geometric model needs resolved radius/rho");
        }
        const double recon = cfg.rho * kPi * cfg.radius_km * cfg.radius_km;
        if (std::abs(recon - cfg.n) > 1e-9 * cfg.n) {
            fail(Errc::invalid_config, "rho * pi * R^2 != n");
        }
        validate(cfg.sat);
        validate(cfg.fiber);
    }
    if (cfg.model == ModelKind::er) {
        // er_mean_degree == n-1 means p = 1 (complete graph) and is allowed.
        if (!std::isfinite(cfg.er_mean_degree) || cfg.er_mean_degree < 0.0 ||
            cfg.er_mean_degree > static_cast<double>(cfg.n - 1)) {
            fail(Errc::invalid_config, "er_mean_degree must be in [0, n-1]");
        }
    }
    if (cfg.model == ModelKind::ba) {
        if (cfg.ba_m < 1 || cfg.ba_m >= cfg.n) fail(Errc::invalid_config, "ba_m must be in [1, n)");
    }
}

Graph generate_sbqi(const NetworkConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::sbqi) fail(Errc::invalid_config, "model is not sbqi");
    GeometricInputs in = place_nodes(cfg);
    std::vector<double> psat(cfg.n);
    for (std::uint32_t i = 0; i < cfg.n; ++i) {
        psat[i] = p_sat(sat_distance_km(in.positions[i], cfg.sat), cfg.sat);
    }
    const std::uint64_t pair_seed = substream_seed(cfg.seed, stream::pairs);
    const auto& kernels = kern::active_kernels();
    std::vector<std::vector<std::uint32_t>> upper(cfg.n);
    for (std::uint32_t i = 0; i + 1 < cfg.n; ++i) {
        kernels.sbqi_row(pair_seed, i, cfg.n, psat.data(), cfg.n_p, upper[i]);
    }
    Graph g = assemble(cfg.n, upper);
    g.positions = std::move(in.positions);
    return g;
}

Graph generate_ofbqi(const NetworkConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::ofbqi) fail(Errc::invalid_config, "model is not ofbqi");
    GeometricInputs in = place_nodes(cfg);
    const double lambda_per_km = cfg.fiber.alpha_db_per_km * kLn10 / 10.0;
    const std::uint64_t pair_seed = substream_seed(cfg.seed, stream::pairs);
    const auto& kernels = kern::active_kernels();
    std::vector<std::vector<std::uint32_t>> upper(cfg.n);
    for (std::uint32_t i = 0; i + 1 < cfg.n; ++i) {
        kernels.ofbqi_row(pair_seed, i, cfg.n, in.xs.data(), in.ys.data(), lambda_per_km,
                          cfg.n_p, upper[i]);
    }
    Graph g = assemble(cfg.n, upper);
    g.positions = std::move(in.positions);
    return g;
}

Graph generate_er(const NetworkConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::er) fail(Errc::invalid_config, "model is not er");
    const double p = cfg.er_mean_degree / static_cast<double>(cfg.n - 1);
    const std::uint64_t pair_seed = substream_seed(cfg.seed, stream::pairs);
    const auto& kernels = kern::active_kernels();
    std::vector<std::vector<std::uint32_t>> upper(cfg.n);
    for (std::uint32_t i = 0; i + 1 < cfg.n; ++i) {
        kernels.bernoulli_row(pair_seed, i, cfg.n, p, upper[i]);
    }
    return assemble(cfg.n, upper);
}

Graph generate_ba(const NetworkConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::ba) fail(Errc::invalid_config, "model is not ba");
    const std::uint32_t m = cfg.ba_m;
    SplitMix64 rng(substream_seed(cfg.seed, stream::attachment));
    std::vector<std::vector<std::uint32_t>> upper(cfg.n);
    std::vector<std::uint32_t> endpoints;  // one entry per edge endpoint
    endpoints.reserve(2 * (static_cast<std::size_t>(m) * cfg.n + m * m));
    for (std::uint32_t i = 0; i <= m; ++i) {
        for (std::uint32_t j = i + 1; j <= m; ++j) {
            upper[i].push_back(j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    std::vector<std::uint32_t> targets;
    targets.reserve(m);
    for (std::uint32_t t = m + 1; t < cfg.n; ++t) {
        // Degree-proportional sampling from the endpoint multiset, frozen at
        // the state before t's own edges; duplicates are re-drawn.
        const std::size_t pool = endpoints.size();
        targets.clear();
        while (targets.size() < m) {
            const std::uint32_t cand = endpoints[rng.next_below(pool)];
            if (std::find(targets.begin(), targets.end(), cand) == targets.end()) {
                targets.push_back(cand);
            }
        }
        std::sort(targets.begin(), targets.end());
        for (const std::uint32_t s : targets) {
            upper[s].push_back(t);
            endpoints.push_back(s);
            endpoints.push_back(t);
        }
    }
    return assemble(cfg.n, upper);
}

Graph generate(const NetworkConfig& cfg) {
    switch (cfg.model) {
        case ModelKind::sbqi: return generate_sbqi(cfg);
        case ModelKind::ofbqi: return generate_ofbqi(cfg);
        case ModelKind::er: return generate_er(cfg);
        case ModelKind::ba: return generate_ba(cfg);
    }
    fail(Errc::invalid_config, "unknown model kind");
}

}  // namespace qnet
