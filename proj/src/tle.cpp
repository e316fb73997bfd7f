#include "leosim/tle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "leosim/errors.hpp"
#include "leosim/geodesy.hpp"
#include "leosim/kepler.hpp"

namespace leosim {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// start/len are the 1-based column positions of the standard layout.
std::string_view field(std::string_view line, int start, int len) {
    return line.substr(static_cast<size_t>(start - 1), static_cast<size_t>(len));
}

double parse_double_field(std::string_view line, int start, int len, const char* what,
                          int line_no) {
    const std::string s = trim(field(line, start, len));
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw TleError(std::string("malformed ") + what + " field at line " +
                       std::to_string(line_no));
    }
}

long parse_int_field(std::string_view line, int start, int len, const char* what, int line_no) {
    const std::string s = trim(field(line, start, len));
    try {
        size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw TleError(std::string("malformed ") + what + " field at line " +
                       std::to_string(line_no));
    }
}

void verify_checksum(std::string_view line, int line_no) {
    if (line.size() < 69) {
        throw TleError("element line too short at line " + std::to_string(line_no));
    }
    const char c = line[68];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw TleError("missing checksum digit at line " + std::to_string(line_no));
    }
    const int expected = tle_line_checksum(line);
    if (c - '0' != expected) {
        throw TleError("TLE checksum mismatch at line " + std::to_string(line_no) + " (expected " +
                       std::to_string(expected) + ", found " + std::string(1, c) + ")");
    }
}

bool is_element_line(std::string_view line, char which) {
    return line.size() >= 69 && line[0] == which && line[1] == ' ';
}

} // namespace

int tle_line_checksum(std::string_view line) {
    int sum = 0;
    const size_t n = std::min<size_t>(line.size(), 68);
    for (size_t i = 0; i < n; ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        if (c == '-') sum += 1;
    }
    return sum % 10;
}

std::vector<OrbitalElements> parse_tle(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }

    std::vector<OrbitalElements> out;
    std::string pending_name;
    for (size_t idx = 0; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        const int line_no = static_cast<int>(idx) + 1;
        if (trim(line).empty()) continue;
        if (is_element_line(line, '2')) {
            throw TleError("element line 2 without preceding line 1 at line " +
                           std::to_string(line_no));
        }
        if (!is_element_line(line, '1')) {
            pending_name = trim(line);
            continue;
        }
        if (idx + 1 >= lines.size() || !is_element_line(lines[idx + 1], '2')) {
            throw TleError("element line 1 without following line 2 at line " +
                           std::to_string(line_no));
        }
        const std::string& l1 = line;
        const std::string& l2 = lines[idx + 1];
        const int l2_no = line_no + 1;
        verify_checksum(l1, line_no);
        verify_checksum(l2, l2_no);

        OrbitalElements el;
        el.name = pending_name;
        pending_name.clear();
        el.satellite_id =
            static_cast<std::uint32_t>(parse_int_field(l1, 3, 5, "satellite number", line_no));

        const long yy = parse_int_field(l1, 19, 2, "epoch year", line_no);
        const double day = parse_double_field(l1, 21, 12, "epoch day", line_no);
        const int year = static_cast<int>(yy < 57 ? 2000 + yy : 1900 + yy);
        el.epoch = from_year_day(year, day);

        el.inclination_rad =
            wrap_two_pi(deg_to_rad(parse_double_field(l2, 9, 8, "inclination", l2_no)));
        el.raan_rad = wrap_two_pi(deg_to_rad(parse_double_field(l2, 18, 8, "RAAN", l2_no)));
        // Implied-decimal field: 7 digits after "0.".
        el.eccentricity =
            static_cast<double>(parse_int_field(l2, 27, 7, "eccentricity", l2_no)) / 1e7;
        el.arg_perigee_rad =
            wrap_two_pi(deg_to_rad(parse_double_field(l2, 35, 8, "argument of perigee", l2_no)));
        el.mean_anomaly_rad =
            wrap_two_pi(deg_to_rad(parse_double_field(l2, 44, 8, "mean anomaly", l2_no)));
        el.mean_motion_rev_day = parse_double_field(l2, 53, 11, "mean motion", l2_no);
        if (el.mean_motion_rev_day <= 0.0) {
            throw TleError("non-positive mean motion at line " + std::to_string(l2_no));
        }
        if (el.eccentricity < 0.0 || el.eccentricity >= 1.0) {
            throw TleError("eccentricity out of [0, 1) at line " + std::to_string(l2_no));
        }
        if (el.name.empty()) el.name = "SAT-" + std::to_string(el.satellite_id);
        out.push_back(std::move(el));
        ++idx; // consumed line 2
    }
    return out;
}

std::string format_tle(const std::vector<OrbitalElements>& elements) {
    std::string out;
    for (const auto& el : elements) {
        const YearDay yd = to_year_day(el.epoch);
        char l1[80];
        char l2[80];
        std::snprintf(l1, sizeof l1, "1 %05uU 00000A   %02d%012.8f  .00000000  00000-0  00000-0 0    1",
                      el.satellite_id % 100000u, yd.year % 100, yd.day);
        std::snprintf(l2, sizeof l2, "2 %05u %8.4f %8.4f %07ld %8.4f %8.4f %11.8f    1",
                      el.satellite_id % 100000u, rad_to_deg(el.inclination_rad),
                      rad_to_deg(el.raan_rad), std::lround(el.eccentricity * 1e7),
                      rad_to_deg(el.arg_perigee_rad), rad_to_deg(el.mean_anomaly_rad),
                      el.mean_motion_rev_day);
        out += el.name;
        out += '\n';
        out += l1;
        out += std::to_string(tle_line_checksum(l1));
        out += '\n';
        out += l2;
        out += std::to_string(tle_line_checksum(l2));
        out += '\n';
    }
    return out;
}

} // namespace leosim
