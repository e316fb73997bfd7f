#pragma once

#include <vector>

#include "leosim/orbital_elements.hpp"

namespace leosim {

/// Circular-orbit mean motion (rev/day) at a given altitude above the
/// equatorial radius, from Kepler's third law.
double mean_motion_rev_day_for_altitude(double altitude_km);

/// Generates a Walker-delta shell: RAAN evenly spaced over a full turn,
/// mean anomaly evenly spaced within each orbit, with an inter-orbit
/// phase offset of phasing * 2*pi / (orbit_count * sats_per_orbit).
/// All orbits circular (e = 0). Satellite ids run from 1 in orbit-major
/// order. Altitude must lie in [300, 2000] km.
std::vector<OrbitalElements> generate_walker(int orbit_count, int sats_per_orbit,
                                             double altitude_km, double inclination_deg,
                                             int phasing, UtcMillis epoch = 1735689600000LL);

} // namespace leosim
