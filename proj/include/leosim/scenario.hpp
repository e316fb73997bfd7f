#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leosim/time_utc.hpp"

namespace leosim {

enum class IslPattern { IntraOrbit, Grid };
enum class HandoverStrategy { DistanceBased, LongestAttachment };
enum class RouteMetric { Latency, InverseCapacity, HopCount };
enum class WeatherMode { Live, Fixture };
enum class GroundRole { Terminal, Gateway };

/// RF and sharing parameters of the link budget.
struct RfParameters {
    double eirp_dbw = 0.0;
    double g_over_t_db_k = 0.0;
    double bandwidth_hz = 0.0;
    double frequency_hz = 0.0;
    double fixed_losses_db = 0.0; // polarization + misalignment
    double cell_density = 1.0;    // 1 / users-per-cell
    double isl_capacity_mbps = 0.0;

    bool operator==(const RfParameters&) const = default;
};

struct GroundSegment {
    std::string id;
    GroundRole role = GroundRole::Terminal;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_m = 0.0;

    bool operator==(const GroundSegment&) const = default;
};

struct FlowSpec {
    std::string id;
    std::string src;
    std::string dst;
    double start_s = 0.0;
    double duration_s = 0.0; // 0 = until the end of the window
    std::optional<double> demand_mbps; // empty = unlimited
    double disruption_window_ms = 0.0;

    bool operator==(const FlowSpec&) const = default;
};

struct WalkerParams {
    int orbits = 0;
    int sats_per_orbit = 0;
    double altitude_km = 0.0;
    double inclination_deg = 0.0;
    int phasing = 0;

    bool operator==(const WalkerParams&) const = default;
};

struct ScenarioConfig {
    int schema_version = 1;

    // constellation
    std::string constellation_name;
    IslPattern isl_pattern = IslPattern::Grid;
    double isl_max_range_km = 5000.0;
    std::optional<double> isl_latitude_mask_deg;
    double isl_capacity_mbps = 0.0;
    double gsl_min_elevation_deg = 25.0;
    int isl_cross_index_offset = 0; // positional shift into the next orbit

    // satellite_source (exactly one of the two)
    std::optional<std::string> tle_file;
    std::optional<WalkerParams> walker;

    std::vector<GroundSegment> ground_segments;

    RfParameters rf;

    // sim_window
    UtcMillis start_epoch = 0;
    double duration_s = 0.0;
    int update_interval_ms = 1000;
    double delta_eps_latency_ms = 0.01;
    double delta_eps_capacity_mbps = 1.0;
    bool relevance_filter = true;

    // weather
    WeatherMode weather_mode = WeatherMode::Fixture;
    std::optional<std::string> weather_fixture;
    std::string weather_api_key_env = "WEATHER_API_KEY";

    // applications
    std::vector<FlowSpec> flows;
    RouteMetric route_metric = RouteMetric::Latency;
    HandoverStrategy handover = HandoverStrategy::DistanceBased;
    bool all_pairs_routing = false;

    bool operator==(const ScenarioConfig&) const = default;

    std::uint32_t tick_count() const {
        return static_cast<std::uint32_t>(duration_s * 1000.0 / update_interval_ms + 0.5);
    }
};

/// Parses and validates a scenario document. Throws ConfigError naming
/// the offending section/field. Pure and deterministic.
ScenarioConfig parse_scenario(const std::string& text);

ScenarioConfig parse_scenario_file(const std::string& path);

/// Canonical YAML form; parse(serialize(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

} // namespace leosim
