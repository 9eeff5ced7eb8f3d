#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "qnet/channel.hpp"
#include "qnet/graph.hpp"

namespace qnet {

enum class ModelKind { sbqi, ofbqi, er, ba };

const char* model_name(ModelKind m) noexcept;
ModelKind model_from_name(const std::string& name);

/// Full parameter set for one network realization. For the geometric models
/// radius_km and rho are both stored resolved (rho * pi * R^2 == n); ER/BA
/// leave them NaN.
struct NetworkConfig {
    ModelKind model = ModelKind::sbqi;
    std::uint32_t n = 0;
    double radius_km = std::nan("");
    double rho = std::nan("");
    std::uint32_t n_p = 50;
    SatelliteParams sat;
    FiberParams fiber;
    double er_mean_degree = std::nan("");  // ER only
    std::uint32_t ba_m = 0;                // BA only
    std::uint64_t seed = 0;
    bool rho_primary = true;  // which of rho/radius the user specified

    bool geometric() const noexcept { return model == ModelKind::sbqi || model == ModelKind::ofbqi; }
};

/// Fills the missing member of the (radius, rho) pair from n. Exactly one
/// must be set (finite); throws constraint-violation otherwise.
void resolve_geometry(NetworkConfig& cfg);

void validate(const NetworkConfig& cfg);

/// One graph realization from the config's own seed. Deterministic: the same
/// config yields a byte-identical graph regardless of kernel or thread count.
Graph generate(const NetworkConfig& cfg);

Graph generate_sbqi(const NetworkConfig& cfg);
Graph generate_ofbqi(const NetworkConfig& cfg);
Graph generate_er(const NetworkConfig& cfg);
Graph generate_ba(const NetworkConfig& cfg);

}  // namespace qnet
