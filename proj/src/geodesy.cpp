#include "leosim/geodesy.hpp"

namespace leosim {

namespace {

// Earth rotation angle at the J2000 epoch (2000-01-01T11:58:55.816 UTC).
constexpr double kThetaJ2000Rad = 4.894961212823756;
constexpr UtcMillis kJ2000Millis = 946727935816LL;

constexpr double kE2 = kEarthFlattening * (2.0 - kEarthFlattening); // first eccentricity squared

} // namespace

Vec3 geodetic_to_ecef(const Geodetic& g) {
    const double lat = deg_to_rad(g.lat_deg);
    const double lon = deg_to_rad(g.lon_deg);
    const double sin_lat = std::sin(lat);
    const double n = kEarthEquatorialRadiusKm / std::sqrt(1.0 - kE2 * sin_lat * sin_lat);
    return {(n + g.alt_km) * std::cos(lat) * std::cos(lon),
            (n + g.alt_km) * std::cos(lat) * std::sin(lon),
            (n * (1.0 - kE2) + g.alt_km) * sin_lat};
}

Geodetic ecef_to_geodetic(const Vec3& p) {
    const double lon = std::atan2(p.y, p.x);
    const double rho = std::hypot(p.x, p.y);
    double lat = std::atan2(p.z, rho * (1.0 - kE2));
    double n = kEarthEquatorialRadiusKm;
    double alt = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double sin_lat = std::sin(lat);
        n = kEarthEquatorialRadiusKm / std::sqrt(1.0 - kE2 * sin_lat * sin_lat);
        alt = rho / std::cos(lat) - n;
        lat = std::atan2(p.z, rho * (1.0 - kE2 * n / (n + alt)));
    }
    return {rad_to_deg(lat), rad_to_deg(lon), alt};
}

double earth_rotation_angle_rad(UtcMillis t) {
    const double dt_s = static_cast<double>(t - kJ2000Millis) / 1000.0;
    double theta = std::fmod(kThetaJ2000Rad + kEarthRotationRadPerS * dt_s, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    return theta;
}

Vec3 eci_to_ecef(const Vec3& eci, UtcMillis t) {
    const double theta = earth_rotation_angle_rad(t);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Rz(-theta) applied to the inertial vector.
    return {c * eci.x + s * eci.y, -s * eci.x + c * eci.y, eci.z};
}

double elevation_deg(const Vec3& ground_ecef, const Geodetic& ground_geo, const Vec3& target_ecef) {
    const double lat = deg_to_rad(ground_geo.lat_deg);
    const double lon = deg_to_rad(ground_geo.lon_deg);
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    const Vec3 d = target_ecef - ground_ecef;
    const double range = d.norm();
    if (range <= 0.0) return 90.0;
    return rad_to_deg(std::asin(up.dot(d) / range));
}

} // namespace leosim
