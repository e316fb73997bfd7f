#include "leosim/weather.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "leosim/errors.hpp"

namespace leosim {

WeatherSample clear_sky(double lat_deg, double lon_deg, UtcMillis t) {
    WeatherSample s;
    s.lat_deg = lat_deg;
    s.lon_deg = lon_deg;
    s.t = t;
    return s;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

FixtureWeatherProvider::FixtureWeatherProvider(const std::string& csv_path,
                                               double location_tol_deg, double time_tol_s) {
    location_tol_deg_ = location_tol_deg;
    time_tol_s_ = time_tol_s;
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw WeatherError("cannot open weather fixture '" + csv_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    load(buf.str());
}

FixtureWeatherProvider FixtureWeatherProvider::from_text(const std::string& csv_text,
                                                         double location_tol_deg,
                                                         double time_tol_s) {
    FixtureWeatherProvider p;
    p.location_tol_deg_ = location_tol_deg;
    p.time_tol_s_ = time_tol_s;
    p.load(csv_text);
    return p;
}

void FixtureWeatherProvider::load(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    bool header = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 8) {
            throw WeatherError("weather fixture line " + std::to_string(line_no) +
                               ": expected 8 columns, got " + std::to_string(f.size()));
        }
        try {
            WeatherSample s;
            s.lat_deg = std::stod(f[0]);
            s.lon_deg = std::stod(f[1]);
            s.t = parse_iso8601(f[2]);
            s.rain_mm_h = std::stod(f[3]);
            s.snow_mm_h = std::stod(f[4]);
            s.temp_c = std::stod(f[5]);
            s.humidity_pct = std::stod(f[6]);
            s.pressure_hpa = std::stod(f[7]);
            records_.push_back(s);
        } catch (const std::exception& e) {
            throw WeatherError("weather fixture line " + std::to_string(line_no) + ": " +
                               e.what());
        }
    }
    if (records_.empty()) throw WeatherError("weather fixture has no records");
}

WeatherSample FixtureWeatherProvider::sample(double lat_deg, double lon_deg, UtcMillis t) {
    // Nearest station first, nearest record time within it.
    double best_loc = 1e300;
    for (const auto& r : records_) {
        const double d = std::hypot(r.lat_deg - lat_deg, r.lon_deg - lon_deg);
        best_loc = std::min(best_loc, d);
    }
    const WeatherSample* best = nullptr;
    double best_time = 1e300;
    for (const auto& r : records_) {
        const double d = std::hypot(r.lat_deg - lat_deg, r.lon_deg - lon_deg);
        if (d > best_loc + 1e-12) continue;
        const double dt = std::abs(static_cast<double>(r.t - t)) / 1000.0;
        if (dt < best_time) {
            best_time = dt;
            best = &r;
        }
    }
    if (best == nullptr || best_loc > location_tol_deg_ || best_time > time_tol_s_) {
        throw WeatherError("no weather fixture record near (" + std::to_string(lat_deg) + ", " +
                           std::to_string(lon_deg) + ") at " + format_iso8601(t));
    }
    return *best;
}

LiveWeatherProvider::LiveWeatherProvider(std::string api_key, Transport transport,
                                         int max_concurrent)
    : api_key_(std::move(api_key)), transport_(std::move(transport)),
      max_concurrent_(max_concurrent < 1 ? 1 : max_concurrent) {
    if (!transport_) {
        transport_ = [this](double lat, double lon) -> std::string {
            httplib::SSLClient client("api.openweathermap.org");
            client.set_connection_timeout(5);
            client.set_read_timeout(5);
            char path[160];
            std::snprintf(path, sizeof path,
                          "/data/2.5/weather?lat=%.4f&lon=%.4f&units=metric&appid=%s", lat, lon,
                          api_key_.c_str());
            auto res = client.Get(path);
            if (!res || res->status != 200) {
                throw WeatherError("weather API request failed" +
                                   (res ? " with status " + std::to_string(res->status) : ""));
            }
            return res->body;
        };
    }
}

WeatherSample LiveWeatherProvider::parse_response(const std::string& body, double lat_deg,
                                                  double lon_deg, UtcMillis t) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw WeatherError(std::string("weather API response is not JSON: ") + e.what());
    }
    WeatherSample s = clear_sky(lat_deg, lon_deg, t);
    try {
        if (j.contains("rain") && j["rain"].contains("1h")) s.rain_mm_h = j["rain"]["1h"];
        if (j.contains("snow") && j["snow"].contains("1h")) s.snow_mm_h = j["snow"]["1h"];
        if (j.contains("main")) {
            const auto& m = j["main"];
            if (m.contains("temp")) s.temp_c = m["temp"];
            if (m.contains("humidity")) s.humidity_pct = m["humidity"];
            if (m.contains("pressure")) s.pressure_hpa = m["pressure"];
        }
    } catch (const nlohmann::json::exception& e) {
        throw WeatherError(std::string("unexpected weather API field type: ") + e.what());
    }
    return s;
}

WeatherSample LiveWeatherProvider::sample(double lat_deg, double lon_deg, UtcMillis t) {
    const auto key = std::make_tuple(std::lround(lat_deg * 10.0), std::lround(lon_deg * 10.0),
                                     static_cast<std::int64_t>(t / 60000));
    {
        std::unique_lock lock(mutex_);
        const auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        slot_free_.wait(lock, [&] { return in_flight_ < max_concurrent_; });
        ++in_flight_;
    }
    std::string body;
    std::exception_ptr err;
    try {
        body = transport_(lat_deg, lon_deg);
    } catch (...) {
        err = std::current_exception();
    }
    {
        std::unique_lock lock(mutex_);
        --in_flight_;
        slot_free_.notify_one();
        if (!err) {
            // Re-check: a racing caller may have populated the key.
            const auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            const WeatherSample s = parse_response(body, lat_deg, lon_deg, t);
            cache_[key] = s;
            return s;
        }
    }
    std::rethrow_exception(err);
}

} // namespace leosim
