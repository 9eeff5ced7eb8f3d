#pragma once

#include <cstdint>
#include <vector>

#include "qnet/rng.hpp"

namespace qnet {

/// Ground-station position in the coverage disk, km, disk centered at origin.
struct NodePosition {
    double x = 0.0;
    double y = 0.0;
};

/// Satellite downlink parameters. Defaults follow a Micius-like setup:
/// 500 km altitude, combined detection/pointing/atmosphere factor 0.1,
/// 0.75 m receiver telescope radius, long-term beam width 2.5e-6 * distance.
struct SatelliteParams {
    double h_sat_km = 500.0;
    double eta0 = 0.1;
    double r_rec_m = 0.75;
    double beam_coeff = 2.5e-6;
};

/// Fiber channel: standard telecom attenuation, dB per km.
struct FiberParams {
    double alpha_db_per_km = 0.2;
};

void validate(const SatelliteParams& p);
void validate(const FiberParams& p);

/// n positions i.i.d. uniform over the disk of the given radius
/// (r = radius*sqrt(u), angle uniform). Deterministic given the stream state.
std::vector<NodePosition> sample_positions(std::size_t n, double radius_km, SplitMix64& rng);

/// Straight-line node-to-satellite distance; the satellite sits at the disk
/// center at altitude h_sat.
double sat_distance_km(const NodePosition& pos, const SatelliteParams& params);

/// Probability that one downlink photon reaches a receiver at distance d_km:
/// eta0 * (1 - exp(-2 r_rec^2 / w^2)) with beam width w = beam_coeff * d.
/// Gaussian-beam aperture truncation; strictly decreasing in d.
double p_sat(double d_km, const SatelliteParams& params);

/// Probability that a photon survives d_km of fiber: 10^(-alpha d / 10).
double p_fiber(double d_km, const FiberParams& params);

/// Probability that at least one of n_p attempts with per-attempt success
/// p_trial succeeds: 1 - (1 - p_trial)^n_p.
double link_prob(double p_trial, std::uint32_t n_p);

}  // namespace qnet
