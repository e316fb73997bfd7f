#pragma once

#include <cstdint>
#include <string>

#include "leosim/time_utc.hpp"

namespace leosim {

/// Keplerian elements of one satellite at a reference epoch.
/// Angles in radians, normalized to [0, 2*pi); mean motion in rev/day.
struct OrbitalElements {
    UtcMillis epoch = 0;
    double inclination_rad = 0.0;
    double raan_rad = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_rad = 0.0;
    double mean_motion_rev_day = 0.0;
    std::uint32_t satellite_id = 0;
    std::string name;
};

/// Result of solving Kepler's equation for one (M, e) pair.
struct AnomalySolution {
    double eccentric_anomaly_rad = 0.0;
    double true_anomaly_rad = 0.0;
};

} // namespace leosim
