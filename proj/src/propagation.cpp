#include "leosim/propagation.hpp"

#include <cmath>

#include "leosim/kepler.hpp"

namespace leosim {

namespace {

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

Vec3 rotate_x(const Vec3& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
}

} // namespace

SatelliteState KeplerianPropagator::propagate(const OrbitalElements& el, UtcMillis t) const {
    const double n_rad_per_s = el.mean_motion_rev_day * kTwoPi / 86400.0;
    const double dt_s = static_cast<double>(t - el.epoch) / 1000.0;
    const double mean_anomaly = wrap_two_pi(el.mean_anomaly_rad + n_rad_per_s * dt_s);
    const AnomalySolution an = solve_anomalies(mean_anomaly, el.eccentricity);

    const double semi_major =
        std::cbrt(kMuEarthKm3S2 / (n_rad_per_s * n_rad_per_s));
    const double radius = semi_major * (1.0 - el.eccentricity * std::cos(an.eccentric_anomaly_rad));
    const Vec3 perifocal{radius * std::cos(an.true_anomaly_rad),
                         radius * std::sin(an.true_anomaly_rad), 0.0};

    const Vec3 eci =
        rotate_z(rotate_x(rotate_z(perifocal, el.arg_perigee_rad), el.inclination_rad),
                 el.raan_rad);

    SatelliteState st;
    st.t = t;
    st.eci_km = eci;
    st.ecef_km = eci_to_ecef(eci, t);
    const Geodetic geo = ecef_to_geodetic(st.ecef_km);
    st.lat_deg = geo.lat_deg;
    st.lon_deg = geo.lon_deg;
    st.altitude_km = st.ecef_km.norm() - kEarthEquatorialRadiusKm;
    return st;
}

} // namespace leosim
