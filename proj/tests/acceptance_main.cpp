// Acceptance suite: runs each top-level criterion end to end and prints
// one pass/fail line per criterion. Exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "leosim/churn.hpp"
#include "leosim/kepler.hpp"
#include "leosim/link_model.hpp"
#include "leosim/playback.hpp"
#include "leosim/precompute.hpp"
#include "leosim/tle.hpp"
#include "leosim/walker.hpp"
#include "support/fixtures.hpp"

using namespace leosim;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void require_near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream os;
            os << what << " (got " << got << ", want " << want << " +/- " << tol << ")";
            failures.push_back(os.str());
        }
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- fixtures

std::vector<OrbitalElements> jittered_shell(unsigned seed) {
    // A 72x22 shell with station-keeping-like eccentricity dispersion;
    // in-plane link lengths then oscillate pair-dependently, so a range
    // limit creates churn on a subset of links instead of all at once.
    auto els = generate_walker(72, 22, 550.0, 53.0, 17);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ecc(0.0, 0.0015);
    for (auto& el : els) el.eccentricity = std::round(ecc(rng) * 1e7) / 1e7;
    return els;
}

std::string intercontinental_grounds() {
    return "  - { id: gs_lon, role: terminal, lat_deg: 51.5, lon_deg: -0.12, alt_m: 30 }\n"
           "  - { id: gs_sfo, role: terminal, lat_deg: 37.77, lon_deg: -122.42, alt_m: 16 }\n";
}

std::string twenty_grounds() {
    const double lats[] = {51.5,  37.77, -33.87, 35.68, -23.55, 40.71, 55.75, 1.35,  19.08, 48.85,
                           52.52, 41.9,  -34.6,  31.23, 39.9,   28.61, -1.29, 45.42, 59.33, -36.85};
    const double lons[] = {-0.12, -122.42, 151.21, 139.69, -46.63, -74.0,  37.62, 103.82,
                           72.88, 2.35,    13.4,   12.5,   -58.38, 121.47, 116.4, 77.21,
                           36.82, -75.7,   18.06,  174.76};
    std::ostringstream os;
    for (int i = 0; i < 20; ++i) {
        os << "  - { id: gs_" << i << ", role: terminal, lat_deg: " << lats[i]
           << ", lon_deg: " << lons[i] << ", alt_m: 10 }\n";
    }
    return os.str();
}

std::string ten_flows() {
    std::ostringstream os;
    for (int i = 0; i < 10; ++i) {
        os << "\n    - { id: f" << i << ", src: gs_" << 2 * i << ", dst: gs_" << 2 * i + 1 << " }";
    }
    return os.str();
}

// --------------------------------------------------------------- criteria

void criterion_1_kepler(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int ei = 0; ei <= 9; ++ei) {
        const double e = 0.1 * ei;
        for (int mi = 0; mi < 1000; ++mi) {
            const double m = kTwoPi * mi / 1000.0;
            const double ea = solve_eccentric_anomaly(m, e);
            if (std::abs(m - (ea - e * std::sin(ea))) >= 1e-12) {
                c.require(false, "Kepler residual >= 1e-12 at e=" + std::to_string(e) +
                                     " M=" + std::to_string(m));
                return;
            }
            const double nu = true_anomaly_from_eccentric(ea, e);
            if (std::sin(nu) * std::sin(ea) < -1e-12 || nu < 0.0 || nu >= kTwoPi) {
                c.require(false, "true-anomaly quadrant violated at e=" + std::to_string(e) +
                                     " M=" + std::to_string(m));
                return;
            }
        }
    }
    const double runtime = seconds_since(t0);
    c.notes << "10 x 1000 grid in " << runtime << " s";
    c.require(runtime < 1.0, "runtime exceeded 1 s");
}

void criterion_2_geometry_reconstruction(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto els = generate_walker(72, 22, 550.0, 53.0, 17);
    const std::string tle_text = format_tle(els);
    const auto parsed = parse_tle(tle_text);
    c.require(parsed.size() == 1584, "re-parsed element count != 1584");
    const auto geo = group_orbits(parsed);
    c.require(geo.orbits.size() == 72, "orbit count != 72");
    UtcMillis ref = parsed.front().epoch;
    for (const auto& el : parsed) ref = std::max(ref, el.epoch);
    for (const auto& orbit : geo.orbits) {
        c.require(orbit.members.size() == 22, "orbit size != 22");
        double prev = -1.0;
        for (const std::uint32_t idx : orbit.members) {
            const auto& el = parsed[idx];
            const double n_rad_ms = el.mean_motion_rev_day * kTwoPi / 86400000.0;
            const double m =
                wrap_two_pi(el.mean_anomaly_rad + n_rad_ms * static_cast<double>(ref - el.epoch));
            const double nu = solve_anomalies(m, el.eccentricity).true_anomaly_rad;
            c.require(nu >= prev, "orbit members not sorted by true anomaly");
            prev = nu;
        }
    }
    const double runtime = seconds_since(t0);
    c.notes << "1584 elements round-tripped in " << runtime << " s";
    c.require(runtime < 5.0, "runtime exceeded 5 s");
}

WeightedGraph random_graph(std::mt19937& rng, int n, double edge_prob) {
    LinkValueMatrix lm;
    lm.n = static_cast<std::uint32_t>(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, 20);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (coin(rng) < edge_prob) {
                lm.edges.push_back(Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
                lm.values.push_back(weight(rng));
            }
        }
    }
    return build_graph(lm, lm, RouteMetric::Latency);
}

std::vector<double> bellman_ford(const WeightedGraph& g, std::uint32_t src) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n, kInf);
    dist[src] = 0.0;
    for (std::uint32_t round = 0; round + 1 < g.n; ++round) {
        bool changed = false;
        for (std::uint32_t u = 0; u < g.n; ++u) {
            if (dist[u] == kInf) continue;
            for (const auto& [v, w] : g.adjacency[u]) {
                if (dist[u] + w < dist[v]) {
                    dist[v] = dist[u] + w;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

void enumerate_paths(const WeightedGraph& g, std::uint32_t u, std::uint32_t dst, double cost,
                     std::vector<bool>& used, double& best) {
    if (u == dst) {
        best = std::min(best, cost);
        return;
    }
    for (const auto& [v, w] : g.adjacency[u]) {
        if (used[v]) continue;
        used[v] = true;
        enumerate_paths(g, v, dst, cost + w, used, best);
        used[v] = false;
    }
}

void criterion_3_routing_oracle(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20250101);
    int exhaustive_checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 26); // 5..30 nodes
        const auto g = random_graph(rng, n, 0.3);
        const std::uint32_t src = rng() % n;
        const auto tree = shortest_path_tree(g, src);
        const auto oracle = bellman_ford(g, src);
        for (std::uint32_t u = 0; u < g.n; ++u) {
            if (tree.dist[u] != oracle[u]) {
                c.require(false, "Dijkstra != Bellman-Ford on trial " + std::to_string(trial));
                return;
            }
        }
        if (n <= 10) {
            ++exhaustive_checked;
            const std::uint32_t dst = (src + 1) % n;
            const auto paths = shortest_paths(g, {{dst, src}});
            std::vector<bool> used(g.n, false);
            used[dst] = true;
            double best = std::numeric_limits<double>::infinity();
            enumerate_paths(g, dst, src, 0.0, used, best);
            const double got =
                paths[0].reachable ? paths[0].cost : std::numeric_limits<double>::infinity();
            if (got != best) {
                c.require(false, "Dijkstra != exhaustive enumeration on trial " +
                                     std::to_string(trial));
                return;
            }
        }
    }
    const double runtime = seconds_since(t0);
    c.notes << "100 graphs (" << exhaustive_checked << " exhaustively enumerated) in " << runtime
            << " s";
    c.require(exhaustive_checked > 0, "no graph small enough for exhaustive enumeration");
    c.require(runtime < 10.0, "runtime exceeded 10 s");
}

void criterion_4_link_budget(Check& c) {
    c.require_near(fspl_db(1.0, 1e9), 92.45, 0.01, "FSPL(1 km, 1 GHz)");
    c.require_near(fspl_db(550.0, 12e9), 168.84, 0.01, "FSPL(550 km, 12 GHz)");
    c.require_near(propagation_delay_ms(550.0), 1.8346, 0.0001, "delay(550 km)");

    RfParameters rf;
    rf.eirp_dbw = 50.0;
    rf.g_over_t_db_k = 10.0;
    rf.bandwidth_hz = 240e6;
    rf.frequency_hz = 12e9;
    rf.fixed_losses_db = 2.0;
    rf.cell_density = 1.0;
    const WeatherSample clear = clear_sky(0, 0, 0);
    const double term_by_term =
        50.0 + 10.0 - fspl_db(550.0, 12e9) - 2.0 - 0.0 + 228.6 - 10.0 * std::log10(240e6);
    const double got = snr_db(rf, 550.0, 90.0, clear);
    c.require_near(got, term_by_term, 1e-6, "worked SNR example vs term-by-term sum");
    c.notes << "SNR = " << got << " dB";
}

void criterion_5_churn(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dir = test_support::scratch_dir("acceptance_churn");
    test_support::write_file(dir / "shell.tle", format_tle(jittered_shell(7)));
    test_support::write_file(dir / "weather.csv", test_support::clear_sky_fixture_csv());

    test_support::ScenarioBuilder b;
    b.tle_file = (dir / "shell.tle").string();
    b.max_range_km = 1980.0; // cuts only the tail of in-plane link swings
    b.duration_s = 1800.0;
    b.interval_ms = 1000;
    b.relevance = false;
    b.weather_fixture_path = (dir / "weather.csv").string();
    const auto config = b.build();
    FixtureWeatherProvider weather(*config.weather_fixture);
    const ScenarioBundle bundle = precompute(config, weather);
    const ChurnReport report = churn_report(bundle);

    c.require(report.total_isl_count == 3168, "total ISL count != 3168");
    int nonzero_minutes = 0;
    for (const auto& m : report.minutes) nonzero_minutes += m.changes > 0;
    const double bound = 0.01 * static_cast<double>(report.total_isl_count);
    c.notes << "mean " << report.mean_changes_per_minute << " changes/min ("
            << report.mean_changes_per_minute / report.total_isl_count * 100.0 << "% of "
            << report.total_isl_count << "), " << nonzero_minutes << "/30 minutes nonzero, "
            << seconds_since(t0) << " s";
    c.require(report.mean_changes_per_minute < bound,
              "mean ISL changes per minute not below 1% of the ISL count");
    c.require(nonzero_minutes >= 1, "no minute with nonzero churn");
    c.require(seconds_since(t0) < 600.0, "runtime exceeded 10 min");
}

void criterion_6_realtime(Check& c) {
    const auto dir = test_support::scratch_dir("acceptance_realtime");
    test_support::write_file(dir / "weather.csv", test_support::clear_sky_fixture_csv());
    test_support::ScenarioBuilder b;
    b.orbits = 72;
    b.sats_per_orbit = 22;
    b.phasing = 17;
    b.duration_s = 60.0;
    b.interval_ms = 1000;
    b.relevance = true;
    b.grounds = twenty_grounds();
    b.flows = ten_flows();
    b.weather_fixture_path = (dir / "weather.csv").string();
    const auto config = b.build();
    FixtureWeatherProvider weather(*config.weather_fixture);
    const ScenarioBundle bundle = precompute(config, weather);
    save_bundle(bundle, dir / "rt.lsb");
    const ScenarioBundle loaded = load_bundle(dir / "rt.lsb");

    PlaybackOptions options;
    options.mode = PlaybackMode::Realtime;
    std::uint64_t events = 0;
    options.sink = [&](const SimEvent&) { ++events; };
    const PlaybackResult result = run_playback(loaded, options);

    std::vector<double> sorted = result.processing_ms;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double p95 = sorted[static_cast<std::size_t>(0.95 * sorted.size())];
    double overruns = 0.0;
    for (double p : result.processing_ms) overruns += std::max(0.0, p - 1000.0);

    c.require(result.processing_ms.size() == 60, "expected 60 ticks");
    c.require(median < 1000.0, "median tick processing >= interval");
    for (std::size_t k = 0; k < result.tick_start_offset_ms.size(); ++k) {
        if (result.tick_start_offset_ms[k] < static_cast<double>(k) * 1000.0 - 1.0) {
            c.require(false, "tick " + std::to_string(k) + " fired early");
            break;
        }
    }
    const double drift = result.wall_elapsed_ms - 60.0 * 1000.0 - overruns;
    c.require(drift >= -1.0, "playback finished before the simulated window");
    c.require(drift <= 750.0, "cumulative drift beyond accumulated overruns");
    c.notes << "median " << median << " ms, p95 tick lag " << p95 << " ms, wall "
            << result.wall_elapsed_ms / 1000.0 << " s, drift " << drift << " ms, " << events
            << " events";
}

void criterion_7_replay(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dir = test_support::scratch_dir("acceptance_replay");
    test_support::write_file(dir / "weather.csv", test_support::clear_sky_fixture_csv());
    test_support::write_file(
        dir / "rain.csv",
        "lat,lon,iso_time,rain_mm_h,snow_mm_h,temp_c,humidity_pct,pressure_hpa\n"
        "51.5,-0.12,2025-01-01T00:00:00Z,10,0,8,90,996\n"
        "37.77,-122.42,2025-01-01T00:00:00Z,4,0,13,70,1004\n");
    test_support::write_file(dir / "shell.tle", format_tle(jittered_shell(11)));

    std::vector<test_support::ScenarioBuilder> scenarios(3);
    scenarios[0].orbits = 6;
    scenarios[0].sats_per_orbit = 8;
    scenarios[0].min_elevation_deg = 10.0;
    scenarios[0].duration_s = 30.0;
    scenarios[0].grounds = intercontinental_grounds();
    scenarios[0].flows = "\n    - { id: f1, src: gs_lon, dst: gs_sfo }";
    scenarios[0].weather_fixture_path = (dir / "weather.csv").string();

    scenarios[1].tle_file = (dir / "shell.tle").string();
    scenarios[1].max_range_km = 1980.0; // link churn on, as in the churn scenario
    scenarios[1].duration_s = 60.0;
    scenarios[1].grounds = intercontinental_grounds();
    scenarios[1].flows = "\n    - { id: f1, src: gs_lon, dst: gs_sfo }";
    scenarios[1].weather_fixture_path = (dir / "rain.csv").string();

    scenarios[2].orbits = 6;
    scenarios[2].sats_per_orbit = 8;
    scenarios[2].pattern = "intra_orbit";
    scenarios[2].min_elevation_deg = 10.0;
    scenarios[2].duration_s = 30.0;
    scenarios[2].handover = "longest_attachment";
    scenarios[2].metric = "hop_count";
    scenarios[2].grounds = intercontinental_grounds();
    scenarios[2].flows = "\n    - { id: f1, src: gs_lon, dst: gs_sfo }";
    scenarios[2].weather_fixture_path = (dir / "rain.csv").string();

    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (const bool relevance : {false, true}) {
            auto builder = scenarios[s];
            builder.relevance = relevance;
            builder.eps_latency = 0.0;
            builder.eps_capacity = 0.0;
            const auto config = builder.build();
            FixtureWeatherProvider weather(*config.weather_fixture);
            const ScenarioBundle bundle = precompute(config, weather);
            FixtureWeatherProvider weather2(*config.weather_fixture);
            const auto direct = compute_all_snapshots(config, weather2);

            TopologySnapshot state = bundle.initial;
            for (std::uint32_t k = 0; k < bundle.tick_count; ++k) {
                if (k > 0) state = apply_delta(state, bundle.deltas[k - 1]);
                const TopologySnapshot want =
                    relevance ? restrict_snapshot(direct[k], bundle.relevance) : direct[k];
                if (!(state == want)) {
                    c.require(false, "scenario " + std::to_string(s) + " (relevance " +
                                         (relevance ? "on" : "off") + ") diverged at tick " +
                                         std::to_string(k));
                    return;
                }
            }
        }
    }
    const double runtime = seconds_since(t0);
    c.notes << "3 scenarios x {global, relevant-subset} bit-exact in " << runtime << " s";
    c.require(runtime < 120.0, "runtime exceeded 2 min");
}

void criterion_8_path_change(Check& c) {
    const auto dir = test_support::scratch_dir("acceptance_pathchange");
    test_support::write_file(dir / "weather.csv", test_support::clear_sky_fixture_csv());
    test_support::ScenarioBuilder b;
    b.orbits = 72;
    b.sats_per_orbit = 22;
    b.phasing = 17;
    b.duration_s = 60.0;
    b.interval_ms = 1000;
    b.relevance = true;
    b.grounds = intercontinental_grounds();
    b.flows = "\n    - { id: f1, src: gs_lon, dst: gs_sfo }";
    b.weather_fixture_path = (dir / "weather.csv").string();
    const auto config = b.build();
    FixtureWeatherProvider weather(*config.weather_fixture);
    const ScenarioBundle bundle = precompute(config, weather);

    std::vector<double> latency(bundle.tick_count, -1.0), rate(bundle.tick_count, -1.0);
    std::vector<bool> hop_changed(bundle.tick_count, false);
    std::vector<std::uint32_t> change_ticks;
    PlaybackOptions options;
    options.sink = [&](const SimEvent& ev) {
        if (ev.kind == SimEvent::Kind::PathChange) {
            change_ticks.push_back(ev.tick);
            if (!ev.payload["old_hops"].is_null() && !ev.payload["new_hops"].is_null() &&
                ev.payload["old_hops"] != ev.payload["new_hops"]) {
                hop_changed[ev.tick] = true;
            }
        } else if (ev.kind == SimEvent::Kind::FlowStats) {
            latency[ev.tick] =
                ev.payload["latency_ms"].is_null() ? -1.0 : double(ev.payload["latency_ms"]);
            rate[ev.tick] = ev.payload["rate_mbps"];
        }
    };
    run_playback(bundle, options);

    int co_occurrence = 0, with_rate_change = 0;
    for (const std::uint32_t t : change_ticks) {
        if (t == 0 || !hop_changed[t]) continue;
        if (latency[t] < 0.0 || latency[t - 1] < 0.0) continue;
        if (std::abs(latency[t] - latency[t - 1]) > 0.01) {
            ++co_occurrence;
            if (std::abs(rate[t] - rate[t - 1]) > 1e-9) ++with_rate_change;
        }
    }
    c.notes << change_ticks.size() << " path changes, " << co_occurrence
            << " with simultaneous hop-count and latency steps, " << with_rate_change
            << " also shifting throughput";
    c.require(!change_ticks.empty(), "no PathChange event in 60 ticks");
    c.require(co_occurrence >= 1, "no tick combines a hop-count change with a latency step");
    c.require(with_rate_change >= 1, "no bottleneck shift changed the reported throughput");
}

void criterion_9_weather_direction(Check& c) {
    std::vector<SatelliteState> states(1);
    states[0].ecef_km = geodetic_to_ecef({0.0, 0.0, 550.0});
    const GroundSite site = GroundSite::from_segment({"gs", GroundRole::Terminal, 0, 0, 0}, 1);
    ConnectivityMatrix conn;
    conn.n = 2;
    conn.edges = {Edge{0, 1}};
    RfParameters rf;
    rf.eirp_dbw = 50.0;
    rf.g_over_t_db_k = 10.0;
    rf.bandwidth_hz = 240e6;
    rf.frequency_hz = 12e9;
    rf.fixed_losses_db = 2.0;
    rf.cell_density = 1.0;
    rf.isl_capacity_mbps = 5000.0;

    ClearSkyProvider clear;
    auto rainy = FixtureWeatherProvider::from_text(
        "lat,lon,iso_time,rain_mm_h,snow_mm_h,temp_c,humidity_pct,pressure_hpa\n"
        "0.0,0.0,2025-01-01T00:00:00Z,10,0,12,85,1000\n");
    const UtcMillis t = parse_iso8601("2025-01-01T00:00:00Z");
    const auto dry = characterize(conn, states, {site}, rf, clear, t, 1);
    const auto wet = characterize(conn, states, {site}, rf, rainy, t, 1);

    c.require(*wet.snr_db[0] < *dry.snr_db[0], "rainy SNR not strictly below clear-sky SNR");
    const double gap = dry.capacity.values[0] - wet.capacity.values[0];
    c.require(gap > 0.0, "rainy capacity not strictly below clear-sky capacity");
    c.notes << "clear " << dry.capacity.values[0] << " Mbps vs rain " << wet.capacity.values[0]
            << " Mbps (gap " << gap << ")";
}

void criterion_10_allocator(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();

    auto capacities = [](std::uint32_t n, std::vector<std::pair<Edge, double>> entries) {
        CapacityMatrix m;
        m.n = n;
        std::sort(entries.begin(), entries.end());
        for (const auto& [e, v] : entries) {
            m.edges.push_back(e);
            m.values.push_back(v);
        }
        return m;
    };
    auto flow_over = [](std::vector<std::uint32_t> nodes,
                        std::optional<double> demand = {}) {
        AllocFlow f;
        f.routed = true;
        f.demand_mbps = demand;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            f.links.emplace_back(nodes[i], nodes[i + 1]);
        }
        return f;
    };

    // Hand-computed 2-flow case: shared 100 Mbps bottleneck.
    {
        const auto cm = capacities(5, {{Edge{0, 1}, 100.0}, {Edge{1, 2}, 500.0}, {Edge{1, 3}, 600.0}});
        const auto rates = allocate_throughput({flow_over({0, 1, 2}), flow_over({0, 1, 3})}, cm);
        c.require_near(rates[0], 50.0, 1e-9, "2-flow even split, flow 0");
        c.require_near(rates[1], 50.0, 1e-9, "2-flow even split, flow 1");
    }
    // Hand-computed demand-capped case.
    {
        const auto cm = capacities(4, {{Edge{0, 1}, 100.0}, {Edge{1, 2}, 1000.0}, {Edge{1, 3}, 1000.0}});
        const auto rates =
            allocate_throughput({flow_over({0, 1, 2}, 10.0), flow_over({0, 1, 3})}, cm);
        c.require_near(rates[0], 10.0, 1e-9, "demand-capped flow");
        c.require_near(rates[1], 90.0, 1e-9, "unlimited flow takes the remainder");
    }
    // Hand-computed 3-flow water-filling.
    {
        const auto cm = capacities(5, {{Edge{0, 1}, 90.0},
                                       {Edge{1, 2}, 1000.0},
                                       {Edge{1, 3}, 60.0},
                                       {Edge{1, 4}, 1000.0}});
        const auto rates = allocate_throughput(
            {flow_over({0, 1, 2}), flow_over({0, 1, 3}), flow_over({4, 1, 3})}, cm);
        c.require_near(rates[1], 30.0, 1e-9, "3-flow case, flow B");
        c.require_near(rates[2], 30.0, 1e-9, "3-flow case, flow C");
        c.require_near(rates[0], 60.0, 1e-9, "3-flow case, flow A");
    }

    // 50 random fixtures: exact conservation + max-min saturation.
    std::mt19937 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 5);
        std::vector<std::pair<Edge, double>> entries;
        for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(n); ++i) {
            for (std::uint32_t j = i + 1; j < static_cast<std::uint32_t>(n); ++j) {
                if (rng() % 2 == 0) entries.emplace_back(Edge{i, j}, 10.0 + rng() % 300);
            }
        }
        if (entries.empty()) continue;
        const auto cm = capacities(static_cast<std::uint32_t>(n), entries);

        std::vector<AllocFlow> flows;
        for (int f = 0; f < 2 + static_cast<int>(rng() % 5); ++f) {
            AllocFlow af;
            af.routed = true;
            af.links.push_back(entries[rng() % entries.size()].first);
            const Edge other = entries[rng() % entries.size()].first;
            if (!(other == af.links[0])) af.links.push_back(other);
            if (rng() % 3 == 0) af.demand_mbps = 5.0 + rng() % 120;
            flows.push_back(af);
        }
        const auto rates = allocate_throughput(flows, cm);

        std::map<Edge, std::int64_t> load;
        for (std::size_t f = 0; f < flows.size(); ++f) {
            for (const Edge& e : flows[f].links) load[e] += llround(rates[f] * 1000.0);
        }
        for (const auto& [e, sum] : load) {
            const std::int64_t cap =
                static_cast<std::int64_t>(std::floor(*cm.at(e.a, e.b) * 1000.0));
            if (sum > cap) {
                c.require(false, "conservation violated on trial " + std::to_string(trial));
                return;
            }
        }
        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (flows[f].demand_mbps &&
                llround(rates[f] * 1000.0) == llround(*flows[f].demand_mbps * 1000.0)) {
                continue;
            }
            bool ok = false;
            for (const Edge& e : flows[f].links) {
                std::int64_t users = 0;
                bool is_max = true;
                for (std::size_t g = 0; g < flows.size(); ++g) {
                    for (const Edge& ge : flows[g].links) {
                        if (ge == e) {
                            ++users;
                            if (rates[g] > rates[f] + 1e-9) is_max = false;
                        }
                    }
                }
                const std::int64_t cap =
                    static_cast<std::int64_t>(std::floor(*cm.at(e.a, e.b) * 1000.0));
                if (cap - load[e] < users && is_max) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                c.require(false, "max-min saturation violated on trial " + std::to_string(trial));
                return;
            }
        }
    }
    const double runtime = seconds_since(t0);
    c.notes << "hand cases + 50 random fixtures in " << runtime << " s";
    c.require(runtime < 5.0, "runtime exceeded 5 s");
}

struct Criterion {
    int number;
    const char* name;
    std::function<void(Check&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Kepler solver residual and quadrant consistency", criterion_1_kepler},
        {2, "Walker-to-TLE geometry reconstruction", criterion_2_geometry_reconstruction},
        {3, "Dijkstra vs Bellman-Ford and exhaustive enumeration", criterion_3_routing_oracle},
        {4, "link budget desk values", criterion_4_link_budget},
        {5, "ISL churn smallness over 30 simulated minutes", criterion_5_churn},
        {6, "real-time playback of the 1584-satellite bundle", criterion_6_realtime},
        {7, "delta replay soundness across three scenarios", criterion_7_replay},
        {8, "path-change phenomenology on an intercontinental flow", criterion_8_path_change},
        {9, "rain strictly reduces SNR and capacity", criterion_9_weather_direction},
        {10, "max-min allocator conservation and fairness", criterion_10_allocator},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        if (check.failures.empty()) {
            std::cout << "[PASS] " << criterion.number << ". " << criterion.name;
            if (!check.notes.str().empty()) std::cout << " -- " << check.notes.str();
            std::cout << " (" << secs << " s)\n";
        } else {
            ++failed;
            std::cout << "[FAIL] " << criterion.number << ". " << criterion.name << " (" << secs
                      << " s)\n";
            for (const auto& f : check.failures) std::cout << "       " << f << "\n";
        }
        std::cout.flush();
    }
    if (failed > 0) {
        std::cout << failed << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
