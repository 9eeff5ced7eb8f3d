#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qnet/ensemble.hpp"
#include "qnet/netgen.hpp"

namespace qnet {

/// Strict JSON config parsing: unknown keys are rejected, every error names
/// the offending field. Defaults come from the channel-parameter table
/// (SatelliteParams / FiberParams defaults, n_p = 50, seed = 0).

nlohmann::json load_json_file(const std::string& path);

/// Applies repeatable --set key=value overrides (dotted paths, values parsed
/// as JSON literals with plain-string fallback) before validation.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& sets);

NetworkConfig parse_network_config(const nlohmann::json& doc);

SweepSpec parse_sweep_spec(const nlohmann::json& doc);

struct RobustnessJob {
    NetworkConfig base;
    RobustnessRunSpec spec;
};

RobustnessJob parse_robustness_spec(const nlohmann::json& doc);

struct FitcheckSpec {
    std::string input;
    double tol_k = 0.25;
    double tol_l = 0.20;
};

FitcheckSpec parse_fitcheck_spec(const nlohmann::json& doc);

/// Canonical re-serialization: only the primary geometry key is emitted, so
/// parse(resolved_config_json(cfg)) reproduces cfg exactly.
nlohmann::json resolved_config_json(const NetworkConfig& cfg);

}  // namespace qnet
