#include "leosim/time_utc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace leosim {

namespace {

namespace chr = std::chrono;

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    const chr::sys_days sd = chr::year{y} / chr::month{m} / chr::day{d};
    return sd.time_since_epoch().count();
}

} // namespace

UtcMillis parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int ms = 0;
    char frac[8] = {0};
    // Two accepted shapes: with and without fractional seconds.
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3[0-9]Z", &y, &mo, &d, &h, &mi, &s,
                    frac) == 7) {
        int scale = 100;
        for (const char* p = frac; *p; ++p) {
            ms += (*p - '0') * scale;
            scale /= 10;
        }
    } else if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ", &y, &mo, &d, &h, &mi, &s) !=
               6) {
        throw std::invalid_argument("not an ISO-8601 UTC timestamp: '" + text + "'");
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
        throw std::invalid_argument("out-of-range field in timestamp: '" + text + "'");
    }
    const std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
    return ((days * 86400 + h * 3600 + mi * 60 + s) * kMillisPerSecond) + ms;
}

std::string format_iso8601(UtcMillis t) {
    namespace chr = std::chrono;
    std::int64_t days = t / kMillisPerDay;
    std::int64_t rem = t % kMillisPerDay;
    if (rem < 0) {
        rem += kMillisPerDay;
        days -= 1;
    }
    const chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    const int h = static_cast<int>(rem / 3600000);
    const int mi = static_cast<int>(rem / 60000 % 60);
    const int s = static_cast<int>(rem / 1000 % 60);
    const int ms = static_cast<int>(rem % 1000);
    char buf[40];
    if (ms == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", int(ymd.year()),
                      unsigned(ymd.month()), unsigned(ymd.day()), h, mi, s);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", int(ymd.year()),
                      unsigned(ymd.month()), unsigned(ymd.day()), h, mi, s, ms);
    }
    return buf;
}

UtcMillis from_year_day(int year, double day_of_year) {
    const std::int64_t jan1_days = days_from_civil(year, 1, 1);
    const double ms = (day_of_year - 1.0) * static_cast<double>(kMillisPerDay);
    return jan1_days * kMillisPerDay + static_cast<std::int64_t>(std::llround(ms));
}

YearDay to_year_day(UtcMillis t) {
    namespace chr = std::chrono;
    std::int64_t days = t / kMillisPerDay;
    if (t % kMillisPerDay < 0) days -= 1;
    const chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    const int year = int(ymd.year());
    const std::int64_t jan1_ms = days_from_civil(year, 1, 1) * kMillisPerDay;
    return {year, 1.0 + static_cast<double>(t - jan1_ms) / static_cast<double>(kMillisPerDay)};
}

} // namespace leosim
