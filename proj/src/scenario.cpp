#include "leosim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "leosim/errors.hpp"

namespace leosim {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("scenario: " + where + ": " + what);
}

YAML::Node require(const YAML::Node& parent, const std::string& where, const std::string& key) {
    const YAML::Node n = parent[key];
    if (!n) fail(where, "missing required field '" + key + "'");
    return n;
}

template <typename T>
T as(const YAML::Node& n, const std::string& where, const std::string& key) {
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail(where, "field '" + key + "' has the wrong type");
    }
}

template <typename T>
T require_as(const YAML::Node& parent, const std::string& where, const std::string& key) {
    return as<T>(require(parent, where, key), where, key);
}

template <typename T>
T get_or(const YAML::Node& parent, const std::string& where, const std::string& key, T def) {
    const YAML::Node n = parent[key];
    if (!n) return def;
    return as<T>(n, where, key);
}

IslPattern parse_pattern(const std::string& s, const std::string& where) {
    if (s == "intra_orbit") return IslPattern::IntraOrbit;
    if (s == "grid") return IslPattern::Grid;
    fail(where, "isl_pattern must be 'intra_orbit' or 'grid', got '" + s + "'");
}

GroundRole parse_role(const std::string& s, const std::string& where) {
    if (s == "terminal") return GroundRole::Terminal;
    if (s == "gateway") return GroundRole::Gateway;
    fail(where, "role must be 'terminal' or 'gateway', got '" + s + "'");
}

RouteMetric parse_metric(const std::string& s, const std::string& where) {
    if (s == "latency") return RouteMetric::Latency;
    if (s == "inverse_capacity") return RouteMetric::InverseCapacity;
    if (s == "hop_count") return RouteMetric::HopCount;
    fail(where, "routing_metric must be 'latency', 'inverse_capacity' or 'hop_count', got '" + s +
                    "'");
}

HandoverStrategy parse_handover(const std::string& s, const std::string& where) {
    if (s == "distance") return HandoverStrategy::DistanceBased;
    if (s == "longest_attachment") return HandoverStrategy::LongestAttachment;
    fail(where, "handover must be 'distance' or 'longest_attachment', got '" + s + "'");
}

WeatherMode parse_weather_mode(const std::string& s, const std::string& where) {
    if (s == "live") return WeatherMode::Live;
    if (s == "fixture") return WeatherMode::Fixture;
    fail(where, "mode must be 'live' or 'fixture', got '" + s + "'");
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("scenario: document is not valid YAML: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("scenario: top level must be a mapping");

    ScenarioConfig c;
    c.schema_version = get_or<int>(root, "top level", "schema_version", 1);
    if (c.schema_version != 1) {
        fail("top level", "unsupported schema_version " + std::to_string(c.schema_version));
    }

    // constellation
    {
        const std::string w = "constellation";
        const YAML::Node n = require(root, "top level", w);
        c.constellation_name = get_or<std::string>(n, w, "name", "constellation");
        c.isl_pattern = parse_pattern(get_or<std::string>(n, w, "isl_pattern", "grid"), w);
        c.isl_max_range_km = get_or<double>(n, w, "isl_max_range_km", 5000.0);
        if (c.isl_max_range_km <= 0.0) fail(w, "isl_max_range_km must be positive");
        if (n["isl_latitude_mask_deg"]) {
            c.isl_latitude_mask_deg = as<double>(n["isl_latitude_mask_deg"], w,
                                                 "isl_latitude_mask_deg");
            if (*c.isl_latitude_mask_deg <= 0.0 || *c.isl_latitude_mask_deg >= 90.0) {
                fail(w, "isl_latitude_mask_deg must be in (0, 90)");
            }
        }
        c.isl_capacity_mbps = require_as<double>(n, w, "isl_capacity_mbps");
        if (c.isl_capacity_mbps <= 0.0) fail(w, "isl_capacity_mbps must be positive");
        c.gsl_min_elevation_deg = get_or<double>(n, w, "gsl_min_elevation_deg", 25.0);
        if (c.gsl_min_elevation_deg < 0.0 || c.gsl_min_elevation_deg >= 90.0) {
            fail(w, "gsl_min_elevation_deg must be in [0, 90)");
        }
        c.isl_cross_index_offset = get_or<int>(n, w, "isl_cross_index_offset", 0);
    }

    // satellite_source
    {
        const std::string w = "satellite_source";
        const YAML::Node n = require(root, "top level", w);
        const bool has_tle = static_cast<bool>(n["tle_file"]);
        const bool has_walker = static_cast<bool>(n["walker"]);
        if (has_tle == has_walker) {
            fail(w, "exactly one of 'tle_file' and 'walker' must be given");
        }
        if (has_tle) {
            c.tle_file = as<std::string>(n["tle_file"], w, "tle_file");
        } else {
            const YAML::Node wn = n["walker"];
            WalkerParams p;
            p.orbits = require_as<int>(wn, w + ".walker", "orbits");
            p.sats_per_orbit = require_as<int>(wn, w + ".walker", "sats_per_orbit");
            p.altitude_km = require_as<double>(wn, w + ".walker", "altitude_km");
            p.inclination_deg = require_as<double>(wn, w + ".walker", "inclination_deg");
            p.phasing = get_or<int>(wn, w + ".walker", "phasing", 0);
            if (p.orbits < 1 || p.sats_per_orbit < 1) {
                fail(w + ".walker", "orbits and sats_per_orbit must be >= 1");
            }
            if (p.altitude_km < 300.0 || p.altitude_km > 2000.0) {
                fail(w + ".walker", "altitude_km must be in [300, 2000]");
            }
            c.walker = p;
        }
    }

    // ground_segments
    {
        const std::string w = "ground_segments";
        const YAML::Node n = root[w];
        std::set<std::string> ids;
        if (n) {
            if (!n.IsSequence()) fail(w, "must be a sequence");
            for (std::size_t i = 0; i < n.size(); ++i) {
                const std::string wi = w + "[" + std::to_string(i) + "]";
                const YAML::Node g = n[i];
                GroundSegment gs;
                gs.id = require_as<std::string>(g, wi, "id");
                gs.role = parse_role(get_or<std::string>(g, wi, "role", "terminal"), wi);
                gs.lat_deg = require_as<double>(g, wi, "lat_deg");
                gs.lon_deg = require_as<double>(g, wi, "lon_deg");
                gs.alt_m = get_or<double>(g, wi, "alt_m", 0.0);
                if (gs.lat_deg < -90.0 || gs.lat_deg > 90.0) {
                    fail(wi, "lat_deg must be in [-90, 90]");
                }
                if (gs.lon_deg < -180.0 || gs.lon_deg > 180.0) {
                    fail(wi, "lon_deg must be in [-180, 180]");
                }
                if (!ids.insert(gs.id).second) fail(wi, "duplicate ground segment id '" + gs.id + "'");
                c.ground_segments.push_back(std::move(gs));
            }
        }
    }

    // rf
    {
        const std::string w = "rf";
        const YAML::Node n = require(root, "top level", w);
        c.rf.eirp_dbw = require_as<double>(n, w, "eirp_dbw");
        c.rf.g_over_t_db_k = require_as<double>(n, w, "g_over_t_db_k");
        c.rf.bandwidth_hz = require_as<double>(n, w, "bandwidth_hz");
        c.rf.frequency_hz = require_as<double>(n, w, "frequency_hz");
        c.rf.fixed_losses_db = get_or<double>(n, w, "fixed_losses_db", 0.0);
        c.rf.cell_density = get_or<double>(n, w, "cell_density", 1.0);
        if (c.rf.bandwidth_hz <= 0.0) fail(w, "bandwidth_hz must be positive");
        if (c.rf.frequency_hz < 1e9 || c.rf.frequency_hz > 100e9) {
            fail(w, "frequency_hz must be in [1e9, 100e9]");
        }
        if (c.rf.cell_density <= 0.0 || c.rf.cell_density > 1.0) {
            fail(w, "cell_density must be in (0, 1]");
        }
        c.rf.isl_capacity_mbps = c.isl_capacity_mbps;
    }

    // sim_window
    {
        const std::string w = "sim_window";
        const YAML::Node n = require(root, "top level", w);
        const std::string start = require_as<std::string>(n, w, "start");
        try {
            c.start_epoch = parse_iso8601(start);
        } catch (const std::exception& e) {
            fail(w, std::string("start: ") + e.what());
        }
        c.duration_s = require_as<double>(n, w, "duration_s");
        c.update_interval_ms = get_or<int>(n, w, "update_interval_ms", 1000);
        if (c.update_interval_ms < 1) fail(w, "update_interval_ms must be >= 1");
        if (c.duration_s <= 0.0) fail(w, "duration_s must be positive");
        const double ticks = c.duration_s * 1000.0 / c.update_interval_ms;
        if (std::abs(ticks - std::round(ticks)) > 1e-9) {
            fail(w, "duration_s must be an integer multiple of update_interval_ms");
        }
        c.delta_eps_latency_ms = get_or<double>(n, w, "delta_eps_latency_ms", 0.01);
        c.delta_eps_capacity_mbps = get_or<double>(n, w, "delta_eps_capacity_mbps", 1.0);
        if (c.delta_eps_latency_ms < 0.0 || c.delta_eps_capacity_mbps < 0.0) {
            fail(w, "delta thresholds must be >= 0");
        }
        c.relevance_filter = get_or<bool>(n, w, "relevance_filter", true);
    }

    // weather
    {
        const std::string w = "weather";
        const YAML::Node n = require(root, "top level", w);
        c.weather_mode = parse_weather_mode(require_as<std::string>(n, w, "mode"), w);
        if (c.weather_mode == WeatherMode::Fixture) {
            c.weather_fixture = require_as<std::string>(n, w, "fixture_path");
        } else if (n["fixture_path"]) {
            c.weather_fixture = as<std::string>(n["fixture_path"], w, "fixture_path");
        }
        c.weather_api_key_env = get_or<std::string>(n, w, "api_key_env", "WEATHER_API_KEY");
    }

    // applications
    {
        const std::string w = "applications";
        const YAML::Node n = root[w];
        if (n) {
            c.route_metric = parse_metric(get_or<std::string>(n, w, "routing_metric", "latency"), w);
            c.handover = parse_handover(get_or<std::string>(n, w, "handover", "distance"), w);
            c.all_pairs_routing = get_or<bool>(n, w, "all_pairs_routing", false);
            const YAML::Node flows = n["flows"];
            if (flows) {
                if (!flows.IsSequence()) fail(w, "flows must be a sequence");
                std::set<std::string> ground_ids;
                for (const auto& g : c.ground_segments) ground_ids.insert(g.id);
                std::set<std::string> flow_ids;
                for (std::size_t i = 0; i < flows.size(); ++i) {
                    const std::string wi = w + ".flows[" + std::to_string(i) + "]";
                    const YAML::Node f = flows[i];
                    FlowSpec fs;
                    fs.id = require_as<std::string>(f, wi, "id");
                    fs.src = require_as<std::string>(f, wi, "src");
                    fs.dst = require_as<std::string>(f, wi, "dst");
                    fs.start_s = get_or<double>(f, wi, "start_s", 0.0);
                    fs.duration_s = get_or<double>(f, wi, "duration_s",
                                                   c.duration_s - fs.start_s);
                    if (f["demand_mbps"]) {
                        fs.demand_mbps = as<double>(f["demand_mbps"], wi, "demand_mbps");
                        if (*fs.demand_mbps <= 0.0) fail(wi, "demand_mbps must be positive");
                    }
                    fs.disruption_window_ms = get_or<double>(f, wi, "disruption_window_ms", 0.0);
                    if (fs.disruption_window_ms < 0.0) {
                        fail(wi, "disruption_window_ms must be >= 0");
                    }
                    for (const std::string* ep : {&fs.src, &fs.dst}) {
                        if (ground_ids.count(*ep) == 0) {
                            fail(wi, "flow endpoint '" + *ep +
                                         "' is not a declared ground segment");
                        }
                    }
                    if (fs.src == fs.dst) fail(wi, "src and dst must differ");
                    if (fs.start_s < 0.0 || fs.duration_s <= 0.0 ||
                        fs.start_s + fs.duration_s > c.duration_s + 1e-9) {
                        fail(wi, "flow window must lie within the simulation window");
                    }
                    if (!flow_ids.insert(fs.id).second) fail(wi, "duplicate flow id '" + fs.id + "'");
                    c.flows.push_back(std::move(fs));
                }
            }
        }
    }

    return c;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("scenario: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    ScenarioConfig c = parse_scenario(buf.str());
    // Relative satellite/weather paths are taken relative to the
    // scenario file's own directory.
    const auto base = std::filesystem::path(path).parent_path();
    const auto resolve = [&](std::optional<std::string>& p) {
        if (p && std::filesystem::path(*p).is_relative()) {
            p = (base / *p).lexically_normal().string();
        }
    };
    resolve(c.tle_file);
    resolve(c.weather_fixture);
    return c;
}

std::string serialize_scenario(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "schema_version: " << c.schema_version << "\n";
    os << "constellation:\n";
    os << "  name: " << c.constellation_name << "\n";
    os << "  isl_pattern: " << (c.isl_pattern == IslPattern::Grid ? "grid" : "intra_orbit") << "\n";
    os << "  isl_max_range_km: " << fmt_double(c.isl_max_range_km) << "\n";
    if (c.isl_latitude_mask_deg) {
        os << "  isl_latitude_mask_deg: " << fmt_double(*c.isl_latitude_mask_deg) << "\n";
    }
    os << "  isl_capacity_mbps: " << fmt_double(c.isl_capacity_mbps) << "\n";
    os << "  gsl_min_elevation_deg: " << fmt_double(c.gsl_min_elevation_deg) << "\n";
    os << "  isl_cross_index_offset: " << c.isl_cross_index_offset << "\n";
    os << "satellite_source:\n";
    if (c.tle_file) {
        os << "  tle_file: " << *c.tle_file << "\n";
    } else if (c.walker) {
        os << "  walker:\n";
        os << "    orbits: " << c.walker->orbits << "\n";
        os << "    sats_per_orbit: " << c.walker->sats_per_orbit << "\n";
        os << "    altitude_km: " << fmt_double(c.walker->altitude_km) << "\n";
        os << "    inclination_deg: " << fmt_double(c.walker->inclination_deg) << "\n";
        os << "    phasing: " << c.walker->phasing << "\n";
    }
    os << "ground_segments:";
    if (c.ground_segments.empty()) {
        os << " []\n";
    } else {
        os << "\n";
        for (const auto& g : c.ground_segments) {
            os << "  - id: " << g.id << "\n";
            os << "    role: " << (g.role == GroundRole::Terminal ? "terminal" : "gateway") << "\n";
            os << "    lat_deg: " << fmt_double(g.lat_deg) << "\n";
            os << "    lon_deg: " << fmt_double(g.lon_deg) << "\n";
            os << "    alt_m: " << fmt_double(g.alt_m) << "\n";
        }
    }
    os << "rf:\n";
    os << "  eirp_dbw: " << fmt_double(c.rf.eirp_dbw) << "\n";
    os << "  g_over_t_db_k: " << fmt_double(c.rf.g_over_t_db_k) << "\n";
    os << "  bandwidth_hz: " << fmt_double(c.rf.bandwidth_hz) << "\n";
    os << "  frequency_hz: " << fmt_double(c.rf.frequency_hz) << "\n";
    os << "  fixed_losses_db: " << fmt_double(c.rf.fixed_losses_db) << "\n";
    os << "  cell_density: " << fmt_double(c.rf.cell_density) << "\n";
    os << "sim_window:\n";
    os << "  start: \"" << format_iso8601(c.start_epoch) << "\"\n";
    os << "  duration_s: " << fmt_double(c.duration_s) << "\n";
    os << "  update_interval_ms: " << c.update_interval_ms << "\n";
    os << "  delta_eps_latency_ms: " << fmt_double(c.delta_eps_latency_ms) << "\n";
    os << "  delta_eps_capacity_mbps: " << fmt_double(c.delta_eps_capacity_mbps) << "\n";
    os << "  relevance_filter: " << (c.relevance_filter ? "true" : "false") << "\n";
    os << "weather:\n";
    os << "  mode: " << (c.weather_mode == WeatherMode::Live ? "live" : "fixture") << "\n";
    if (c.weather_fixture) os << "  fixture_path: " << *c.weather_fixture << "\n";
    os << "  api_key_env: " << c.weather_api_key_env << "\n";
    os << "applications:\n";
    os << "  routing_metric: "
       << (c.route_metric == RouteMetric::Latency
               ? "latency"
               : c.route_metric == RouteMetric::InverseCapacity ? "inverse_capacity" : "hop_count")
       << "\n";
    os << "  handover: "
       << (c.handover == HandoverStrategy::DistanceBased ? "distance" : "longest_attachment")
       << "\n";
    os << "  all_pairs_routing: " << (c.all_pairs_routing ? "true" : "false") << "\n";
    os << "  flows:";
    if (c.flows.empty()) {
        os << " []\n";
    } else {
        os << "\n";
        for (const auto& f : c.flows) {
            os << "    - id: " << f.id << "\n";
            os << "      src: " << f.src << "\n";
            os << "      dst: " << f.dst << "\n";
            os << "      start_s: " << fmt_double(f.start_s) << "\n";
            os << "      duration_s: " << fmt_double(f.duration_s) << "\n";
            if (f.demand_mbps) os << "      demand_mbps: " << fmt_double(*f.demand_mbps) << "\n";
            os << "      disruption_window_ms: " << fmt_double(f.disruption_window_ms) << "\n";
        }
    }
    return os.str();
}

} // namespace leosim
