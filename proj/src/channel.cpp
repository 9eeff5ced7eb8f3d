#include "qnet/channel.hpp"

#include <cmath>
#include <string>

#include "qnet/errors.hpp"

namespace qnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMetersPerKm = 1000.0;
}  // namespace

void validate(const SatelliteParams& p) {
    if (!(p.h_sat_km > 0.0)) fail(Errc::invalid_parameter, "h_sat_km must be > 0");
    if (!(p.eta0 >= 0.0 && p.eta0 <= 1.0)) fail(Errc::invalid_parameter, "eta0 must be in [0, 1]");
    if (!(p.r_rec_m > 0.0)) fail(Errc::invalid_parameter, "r_rec_m must be > 0");
    if (!(p.beam_coeff > 0.0)) fail(Errc::invalid_parameter, "beam_coeff must be > 0");
}

void validate(const FiberParams& p) {
    if (!(p.alpha_db_per_km > 0.0)) fail(Errc::invalid_parameter, "alpha_db_per_km must be > 0");
}

std::vector<NodePosition> sample_positions(std::size_t n, double radius_km, SplitMix64& rng) {
    if (n == 0) fail(Errc::invalid_parameter, "need at least one position");
    if (!(radius_km > 0.0)) fail(Errc::invalid_parameter, "radius must be > 0");
    std::vector<NodePosition> out(n);
    for (auto& pos : out) {
        // sqrt(u) makes the radial coordinate uniform in area.
        const double r = radius_km * std::sqrt(rng.next_double());
        const double theta = 2.0 * kPi * rng.next_double();
        pos.x = r * std::cos(theta);
        pos.y = r * std::sin(theta);
    }
    return out;
}

double sat_distance_km(const NodePosition& pos, const SatelliteParams& params) {
    return std::sqrt(pos.x * pos.x + pos.y * pos.y + params.h_sat_km * params.h_sat_km);
}

double p_sat(double d_km, const SatelliteParams& params) {
    if (!(d_km > 0.0)) fail(Errc::invalid_parameter, "distance must be > 0");
    const double w_m = params.beam_coeff * (d_km * kMetersPerKm);
    const double a = 2.0 * params.r_rec_m * params.r_rec_m / (w_m * w_m);
    return params.eta0 * -std::expm1(-a);
}

double p_fiber(double d_km, const FiberParams& params) {
    if (d_km < 0.0) fail(Errc::invalid_parameter, "distance must be >= 0");
    return std::pow(10.0, -params.alpha_db_per_km * d_km / 10.0);
}

double link_prob(double p_trial, std::uint32_t n_p) {
    if (n_p == 0) fail(Errc::invalid_parameter, "n_p must be >= 1");
    if (!(p_trial >= 0.0 && p_trial <= 1.0)) {
        fail(Errc::invalid_parameter, "p_trial must be in [0, 1], got " + std::to_string(p_trial));
    }
    if (p_trial == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n_p) * std::log1p(-p_trial));
}

}  // namespace qnet
