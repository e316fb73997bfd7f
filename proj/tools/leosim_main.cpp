#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "leosim/churn.hpp"
#include "leosim/errors.hpp"
#include "leosim/link_model.hpp"
#include "leosim/playback.hpp"
#include "leosim/precompute.hpp"

namespace {

using namespace leosim;

std::unique_ptr<WeatherProvider> make_weather_provider(const ScenarioConfig& config) {
    if (config.weather_mode == WeatherMode::Fixture) {
        return std::make_unique<FixtureWeatherProvider>(*config.weather_fixture);
    }
    const char* key = std::getenv(config.weather_api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
        throw ConfigError("weather mode is 'live' but environment variable '" +
                          config.weather_api_key_env + "' is not set");
    }
    return std::make_unique<LiveWeatherProvider>(key);
}

int cmd_precompute(const std::string& config_path, const std::string& out_path, bool quiet) {
    ScenarioConfig config = parse_scenario_file(config_path);
    auto weather = make_weather_provider(config);

    PrecomputeOptions options;
    std::uint32_t last_percent = 101;
    if (!quiet) {
        options.progress = [&](std::uint32_t done, std::uint32_t total) {
            const std::uint32_t percent = done * 100u / total;
            if (percent != last_percent && percent % 10 == 0) {
                std::cerr << "precompute: " << done << "/" << total << " ticks (" << percent
                          << "%)\n";
                last_percent = percent;
            }
        };
        options.warning_sink = [](const std::string& w) { std::cerr << "warning: " << w << "\n"; };
    }

    const ScenarioBundle bundle = precompute(config, *weather, options);
    save_bundle(bundle, out_path);
    if (!quiet) {
        std::cerr << "wrote " << out_path << " (" << bundle.tick_count << " ticks, "
                  << bundle.node_index.size() << " nodes)\n";
    }
    return 0;
}

int cmd_run(const std::string& bundle_path, bool realtime, const std::string& events_path,
            const std::vector<std::string>& flow_ids, const std::string& routes_dir) {
    const ScenarioBundle bundle = load_bundle(bundle_path);

    std::ofstream events_file;
    std::ostream* events_out = nullptr;
    if (events_path == "-") {
        events_out = &std::cout;
    } else if (!events_path.empty()) {
        events_file.open(events_path, std::ios::binary | std::ios::trunc);
        if (!events_file) throw std::runtime_error("cannot open events file '" + events_path + "'");
        events_out = &events_file;
    }

    PlaybackOptions options;
    options.mode = realtime ? PlaybackMode::Realtime : PlaybackMode::Fast;
    options.flow_ids = flow_ids;
    if (!routes_dir.empty()) options.export_routes_dir = routes_dir;
    if (events_out != nullptr) {
        options.sink = [events_out](const SimEvent& ev) { *events_out << ev.to_json_line() << "\n"; };
    }

    const PlaybackResult result = run_playback(bundle, options);

    std::vector<double> sorted = result.processing_ms;
    std::sort(sorted.begin(), sorted.end());
    const auto pct = [&](double p) {
        if (sorted.empty()) return 0.0;
        const std::size_t idx =
            std::min(sorted.size() - 1, static_cast<std::size_t>(p * sorted.size()));
        return sorted[idx];
    };
    std::cerr << "playback: " << bundle.tick_count << " ticks, " << result.event_count
              << " events, wall " << result.wall_elapsed_ms / 1000.0 << " s, tick processing median "
              << pct(0.5) << " ms, p95 " << pct(0.95) << " ms\n";
    return 0;
}

int cmd_churn(const std::string& bundle_path, const std::string& csv_path) {
    const ScenarioBundle bundle = load_bundle(bundle_path);
    const ChurnReport report = churn_report(bundle);
    std::cout << churn_table(report);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open CSV file '" + csv_path + "'");
        out << churn_csv(report);
    }
    return 0;
}

int cmd_linkbudget(double distance_km, double freq_hz, double eirp, double gt, double bw,
                   double loss, double rain, double elev, double density) {
    RfParameters rf;
    rf.eirp_dbw = eirp;
    rf.g_over_t_db_k = gt;
    rf.bandwidth_hz = bw;
    rf.frequency_hz = freq_hz;
    rf.fixed_losses_db = loss;
    rf.cell_density = density;

    WeatherSample weather = clear_sky(0.0, 0.0, 0);
    weather.rain_mm_h = rain;

    const double fspl = fspl_db(distance_km, freq_hz);
    const double rain_att = rain_attenuation_db(weather, freq_hz, elev);
    const double noise_bw = 10.0 * std::log10(bw);
    const double snr = snr_db(rf, distance_km, elev, weather);
    const double capacity = gsl_capacity_mbps(snr, bw, density);

    std::cout << "link budget at " << distance_km << " km, " << freq_hz / 1e9 << " GHz\n";
    std::cout << "  EIRP                 +" << eirp << " dBW\n";
    std::cout << "  G/T                  +" << gt << " dB/K\n";
    std::cout << "  FSPL                 -" << fspl << " dB\n";
    std::cout << "  fixed losses         -" << loss << " dB\n";
    std::cout << "  rain attenuation     -" << rain_att << " dB (rain " << rain << " mm/h, elev "
              << elev << " deg)\n";
    std::cout << "  Boltzmann term       +228.6 dB\n";
    std::cout << "  bandwidth term       -" << noise_bw << " dB (" << bw / 1e6 << " MHz)\n";
    std::cout << "  SNR                  " << snr << " dB\n";
    std::cout << "  cell density         x" << density << "\n";
    std::cout << "  Shannon capacity     " << capacity << " Mbps\n";
    std::cout << "  one-way delay        " << propagation_delay_ms(distance_km) << " ms\n";
    return 0;
}

int cmd_export_routes(const std::string& bundle_path, const std::string& out_dir) {
    const ScenarioBundle bundle = load_bundle(bundle_path);
    TopologySnapshot state = bundle.initial;
    export_route_commands(state.routing, state.t, out_dir);
    for (const auto& delta : bundle.deltas) {
        state = apply_delta(state, delta);
        export_route_commands(state.routing, state.t, out_dir);
    }
    std::cerr << "wrote " << bundle.tick_count << " route files to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage LEO constellation network simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, bundle_path, events_path, csv_path, routes_dir;
    std::vector<std::string> flow_ids;
    bool realtime = false, fast = false, quiet = false;
    double distance = 550.0, freq = 12e9, eirp = 50.0, gt = 10.0, bw = 240e6, loss = 0.0,
           rain = 0.0, elev = 90.0, density = 1.0;

    auto* pre = app.add_subcommand("precompute", "Pre-compute a scenario into a bundle");
    pre->add_option("--config", config_path, "Scenario YAML file")->required();
    pre->add_option("--out", out_path, "Output bundle path")->required();
    pre->add_flag("--quiet", quiet, "Suppress progress output");

    auto* run = app.add_subcommand("run", "Play back a pre-computed bundle");
    run->add_option("--bundle", bundle_path, "Bundle file")->required();
    auto* rt = run->add_flag("--realtime", realtime, "Pace ticks against the wall clock");
    run->add_flag("--fast", fast, "Run unpaced (default)")->excludes(rt);
    run->add_option("--events", events_path, "Event log output ('-' for stdout)");
    run->add_option("--flows", flow_ids, "Subset of flow ids to play");
    run->add_option("--export-routes", routes_dir, "Also write per-tick route command files");

    auto* churn = app.add_subcommand("churn", "Per-minute ISL change report for a bundle");
    churn->add_option("--bundle", bundle_path, "Bundle file")->required();
    churn->add_option("--csv", csv_path, "Also write the report as CSV");

    auto* lb = app.add_subcommand("linkbudget", "Print a link budget breakdown");
    lb->add_option("--distance", distance, "Slant distance, km");
    lb->add_option("--freq", freq, "Carrier frequency, Hz");
    lb->add_option("--eirp", eirp, "EIRP, dBW");
    lb->add_option("--gt", gt, "G/T, dB/K");
    lb->add_option("--bw", bw, "Bandwidth, Hz");
    lb->add_option("--loss", loss, "Fixed losses, dB");
    lb->add_option("--rain", rain, "Rain rate, mm/h");
    lb->add_option("--elev", elev, "Elevation angle, deg");
    lb->add_option("--density", density, "Cell density (1/users-per-cell)");

    auto* exp = app.add_subcommand("export-routes", "Write route command files for every tick");
    exp->add_option("--bundle", bundle_path, "Bundle file")->required();
    exp->add_option("--out", routes_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage error
    }

    try {
        if (pre->parsed()) return cmd_precompute(config_path, out_path, quiet);
        if (run->parsed()) return cmd_run(bundle_path, realtime, events_path, flow_ids, routes_dir);
        if (churn->parsed()) return cmd_churn(bundle_path, csv_path);
        if (lb->parsed()) {
            return cmd_linkbudget(distance, freq, eirp, gt, bw, loss, rain, elev, density);
        }
        if (exp->parsed()) return cmd_export_routes(bundle_path, routes_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2; // data/integrity error
    }
    return 1;
}
