#pragma once

#include <cmath>

#include "leosim/time_utc.hpp"

namespace leosim {

// Physical constants. Distances in km throughout the geometry layer.
constexpr double kEarthEquatorialRadiusKm = 6378.137;          // WGS-84 a
constexpr double kEarthFlattening = 1.0 / 298.257223563;       // WGS-84 f
constexpr double kMuEarthKm3S2 = 398600.4418;                  // GM of Earth
constexpr double kEarthRotationRadPerS = 7.2921159e-5;         // sidereal rate
constexpr double kSpeedOfLightKmPerS = 299792.458;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

struct Geodetic {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_km = 0.0;
};

/// Geodetic coordinates on the WGS-84 ellipsoid to ECEF (km).
Vec3 geodetic_to_ecef(const Geodetic& g);

/// ECEF (km) to geodetic; iterative latitude refinement, sub-meter
/// accurate for LEO-range inputs.
Geodetic ecef_to_geodetic(const Vec3& p);

/// Rotation angle of the ECEF frame relative to ECI at time t.
/// Linear sidereal model anchored at the J2000 epoch; precession and
/// nutation are outside this model.
double earth_rotation_angle_rad(UtcMillis t);

Vec3 eci_to_ecef(const Vec3& eci, UtcMillis t);

/// Elevation of a target above the local geodetic horizon of a ground
/// point, degrees. Negative when below the horizon.
double elevation_deg(const Vec3& ground_ecef, const Geodetic& ground_geo, const Vec3& target_ecef);

} // namespace leosim
