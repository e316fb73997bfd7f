#pragma once

#include <condition_variable>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "leosim/time_utc.hpp"

namespace leosim {

/// Weather conditions at one place and time.
struct WeatherSample {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    UtcMillis t = 0;
    double rain_mm_h = 0.0;
    double snow_mm_h = 0.0;
    double temp_c = 15.0;
    double humidity_pct = 50.0;
    double pressure_hpa = 1013.25;
};

WeatherSample clear_sky(double lat_deg, double lon_deg, UtcMillis t);

/// Source of weather samples. Implementations must be safe to call
/// from concurrent precompute workers.
class WeatherProvider {
public:
    virtual ~WeatherProvider() = default;
    virtual WeatherSample sample(double lat_deg, double lon_deg, UtcMillis t) = 0;
};

class ClearSkyProvider final : public WeatherProvider {
public:
    WeatherSample sample(double lat_deg, double lon_deg, UtcMillis t) override {
        return clear_sky(lat_deg, lon_deg, t);
    }
};

/// Replays records from a CSV fixture with header
/// lat,lon,iso_time,rain_mm_h,snow_mm_h,temp_c,humidity_pct,pressure_hpa.
/// sample() returns the nearest-location record (nearest time within
/// that location); a miss beyond the tolerances throws WeatherError
/// naming the query.
class FixtureWeatherProvider final : public WeatherProvider {
public:
    explicit FixtureWeatherProvider(const std::string& csv_path, double location_tol_deg = 5.0,
                                    double time_tol_s = 86400.0);
    static FixtureWeatherProvider from_text(const std::string& csv_text,
                                            double location_tol_deg = 5.0,
                                            double time_tol_s = 86400.0);

    WeatherSample sample(double lat_deg, double lon_deg, UtcMillis t) override;

private:
    FixtureWeatherProvider() = default;
    void load(const std::string& csv_text);

    std::vector<WeatherSample> records_;
    double location_tol_deg_ = 5.0;
    double time_tol_s_ = 86400.0;
};

/// Open Weather Map current-weather client. Responses are cached per
/// (location rounded to 0.1 degrees, minute); at most max_concurrent
/// upstream requests are in flight at once. The transport is injectable
/// for tests; the default performs an HTTPS GET against
/// api.openweathermap.org with the configured API key.
class LiveWeatherProvider final : public WeatherProvider {
public:
    /// Returns the response body of the current-weather query.
    using Transport = std::function<std::string(double lat_deg, double lon_deg)>;

    explicit LiveWeatherProvider(std::string api_key, Transport transport = {},
                                 int max_concurrent = 4);

    WeatherSample sample(double lat_deg, double lon_deg, UtcMillis t) override;

    /// Parses an Open Weather Map current-weather JSON body.
    static WeatherSample parse_response(const std::string& body, double lat_deg, double lon_deg,
                                        UtcMillis t);

private:
    std::string api_key_;
    Transport transport_;
    int max_concurrent_;
    int in_flight_ = 0;
    std::mutex mutex_;
    std::condition_variable slot_free_;
    std::map<std::tuple<long, long, std::int64_t>, WeatherSample> cache_;
};

} // namespace leosim
