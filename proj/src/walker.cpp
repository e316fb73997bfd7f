#include "leosim/walker.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "leosim/geodesy.hpp"
#include "leosim/kepler.hpp"

namespace leosim {

double mean_motion_rev_day_for_altitude(double altitude_km) {
    const double a = kEarthEquatorialRadiusKm + altitude_km;
    const double period_s = kTwoPi * std::sqrt(a * a * a / kMuEarthKm3S2);
    return 86400.0 / period_s;
}

std::vector<OrbitalElements> generate_walker(int orbit_count, int sats_per_orbit,
                                             double altitude_km, double inclination_deg,
                                             int phasing, UtcMillis epoch) {
    if (orbit_count < 1 || sats_per_orbit < 1) {
        throw std::invalid_argument("walker counts must be >= 1");
    }
    if (altitude_km < 300.0 || altitude_km > 2000.0) {
        throw std::out_of_range("walker altitude must be in [300, 2000] km");
    }
    const double mean_motion = mean_motion_rev_day_for_altitude(altitude_km);
    const int total = orbit_count * sats_per_orbit;
    const double phase_step = static_cast<double>(phasing) * kTwoPi / static_cast<double>(total);

    std::vector<OrbitalElements> out;
    out.reserve(static_cast<size_t>(total));
    for (int o = 0; o < orbit_count; ++o) {
        const double raan = kTwoPi * static_cast<double>(o) / static_cast<double>(orbit_count);
        for (int s = 0; s < sats_per_orbit; ++s) {
            OrbitalElements el;
            el.epoch = epoch;
            el.inclination_rad = deg_to_rad(inclination_deg);
            el.raan_rad = raan;
            el.eccentricity = 0.0;
            el.arg_perigee_rad = 0.0;
            el.mean_anomaly_rad = wrap_two_pi(
                kTwoPi * static_cast<double>(s) / static_cast<double>(sats_per_orbit) +
                static_cast<double>(o) * phase_step);
            el.mean_motion_rev_day = mean_motion;
            el.satellite_id = static_cast<std::uint32_t>(o * sats_per_orbit + s + 1);
            char name[16];
            std::snprintf(name, sizeof name, "SAT-%04u", el.satellite_id);
            el.name = name;
            out.push_back(std::move(el));
        }
    }
    return out;
}

} // namespace leosim
