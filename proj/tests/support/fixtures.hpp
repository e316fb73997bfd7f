#pragma once

#include <sstream>
#include <string>

#include "leosim/precompute.hpp"
#include "support/helpers.hpp"

namespace test_support {

/// Propagator that pins every satellite to its epoch position, for
/// motion-free fixtures.
class FrozenPropagator final : public leosim::Propagator {
public:
    leosim::SatelliteState propagate(const leosim::OrbitalElements& el,
                                     leosim::UtcMillis t) const override {
        leosim::SatelliteState st = inner_.propagate(el, el.epoch);
        st.t = t;
        return st;
    }

private:
    leosim::KeplerianPropagator inner_;
};

struct ScenarioBuilder {
    int orbits = 3;
    int sats_per_orbit = 4;
    double altitude_km = 550.0;
    double inclination_deg = 53.0;
    int phasing = 0;
    std::string pattern = "grid";
    double max_range_km = 50000.0;
    double min_elevation_deg = 25.0;
    double duration_s = 10.0;
    int interval_ms = 1000;
    double eps_latency = 0.01;
    double eps_capacity = 1.0;
    bool relevance = false;
    std::string grounds;      // extra YAML lines under ground_segments
    std::string flows = " []"; // YAML for applications.flows
    std::string handover = "distance";
    std::string metric = "latency";
    std::string weather_fixture_path;
    std::string tle_file; // overrides the walker source when set
    std::string start = "2025-01-01T00:00:00Z";

    std::string yaml() const {
        std::ostringstream os;
        os << "constellation:\n";
        os << "  name: fixture\n";
        os << "  isl_pattern: " << pattern << "\n";
        os << "  isl_max_range_km: " << max_range_km << "\n";
        os << "  isl_capacity_mbps: 5000\n";
        os << "  gsl_min_elevation_deg: " << min_elevation_deg << "\n";
        os << "satellite_source:\n";
        if (!tle_file.empty()) {
            os << "  tle_file: " << tle_file << "\n";
        } else {
            os << "  walker: { orbits: " << orbits << ", sats_per_orbit: " << sats_per_orbit
               << ", altitude_km: " << altitude_km << ", inclination_deg: " << inclination_deg
               << ", phasing: " << phasing << " }\n";
        }
        os << "ground_segments:" << (grounds.empty() ? " []" : "") << "\n" << grounds;
        os << "rf:\n";
        os << "  eirp_dbw: 50\n  g_over_t_db_k: 10\n  bandwidth_hz: 240e6\n";
        os << "  frequency_hz: 12e9\n  fixed_losses_db: 2\n  cell_density: 1.0\n";
        os << "sim_window:\n";
        os << "  start: \"" << start << "\"\n";
        os << "  duration_s: " << duration_s << "\n";
        os << "  update_interval_ms: " << interval_ms << "\n";
        os << "  delta_eps_latency_ms: " << eps_latency << "\n";
        os << "  delta_eps_capacity_mbps: " << eps_capacity << "\n";
        os << "  relevance_filter: " << (relevance ? "true" : "false") << "\n";
        os << "weather:\n";
        if (!weather_fixture_path.empty()) {
            os << "  mode: fixture\n  fixture_path: " << weather_fixture_path << "\n";
        } else {
            os << "  mode: fixture\n  fixture_path: unused.csv\n";
        }
        os << "applications:\n";
        os << "  routing_metric: " << metric << "\n";
        os << "  handover: " << handover << "\n";
        os << "  flows:" << flows << "\n";
        return os.str();
    }

    leosim::ScenarioConfig build() const { return leosim::parse_scenario(yaml()); }
};

inline std::string two_ground_segments() {
    return "  - { id: gs_a, role: terminal, lat_deg: 51.5, lon_deg: -0.12, alt_m: 30 }\n"
           "  - { id: gs_b, role: gateway, lat_deg: 37.77, lon_deg: -122.42, alt_m: 16 }\n";
}

inline std::string one_flow() {
    return "\n    - { id: f1, src: gs_a, dst: gs_b }";
}

inline std::string clear_sky_fixture_csv() {
    return "lat,lon,iso_time,rain_mm_h,snow_mm_h,temp_c,humidity_pct,pressure_hpa\n"
           "51.5,-0.12,2025-01-01T00:00:00Z,0,0,10,60,1012\n"
           "37.77,-122.42,2025-01-01T00:00:00Z,0,0,15,50,1015\n";
}

} // namespace test_support
