#include "leosim/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leosim/geodesy.hpp"
#include "leosim/kepler.hpp"

namespace leosim {

namespace {

double circular_diff(double a, double b) {
    double d = std::abs(a - b);
    if (d > kPi) d = kTwoPi - d;
    return d;
}

double true_anomaly_at(const OrbitalElements& el, UtcMillis t) {
    const double n_rad_per_ms = el.mean_motion_rev_day * kTwoPi / 86400000.0;
    const double m = wrap_two_pi(el.mean_anomaly_rad +
                                 n_rad_per_ms * static_cast<double>(t - el.epoch));
    return solve_anomalies(m, el.eccentricity).true_anomaly_rad;
}

} // namespace

ConstellationGeometry group_orbits(const std::vector<OrbitalElements>& elements,
                                   double inclination_tol_deg, double raan_tol_deg) {
    if (elements.empty()) {
        throw std::invalid_argument("group_orbits requires a non-empty element list");
    }
    const double inc_tol = deg_to_rad(inclination_tol_deg);
    const double raan_tol = deg_to_rad(raan_tol_deg);

    UtcMillis reference_epoch = elements.front().epoch;
    for (const auto& el : elements) reference_epoch = std::max(reference_epoch, el.epoch);

    ConstellationGeometry geo;
    for (std::uint32_t idx = 0; idx < elements.size(); ++idx) {
        const auto& el = elements[idx];
        ConstellationGeometry::Orbit* bucket = nullptr;
        for (auto& orbit : geo.orbits) {
            if (std::abs(orbit.inclination_rad - el.inclination_rad) <= inc_tol &&
                circular_diff(orbit.raan_rad, el.raan_rad) <= raan_tol) {
                bucket = &orbit;
                break;
            }
        }
        if (bucket == nullptr) {
            geo.orbits.push_back({el.inclination_rad, el.raan_rad, {}});
            bucket = &geo.orbits.back();
        }
        bucket->members.push_back(idx);
    }

    std::sort(geo.orbits.begin(), geo.orbits.end(), [](const auto& a, const auto& b) {
        if (a.raan_rad != b.raan_rad) return a.raan_rad < b.raan_rad;
        return a.inclination_rad < b.inclination_rad;
    });
    for (auto& orbit : geo.orbits) {
        std::vector<std::pair<double, std::uint32_t>> keyed;
        keyed.reserve(orbit.members.size());
        for (std::uint32_t idx : orbit.members) {
            keyed.emplace_back(true_anomaly_at(elements[idx], reference_epoch), idx);
        }
        std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return elements[a.second].satellite_id < elements[b.second].satellite_id;
        });
        for (std::size_t i = 0; i < keyed.size(); ++i) orbit.members[i] = keyed[i].second;
    }
    return geo;
}

} // namespace leosim
