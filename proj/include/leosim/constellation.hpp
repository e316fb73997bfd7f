#pragma once

#include <cstdint>
#include <vector>

#include "leosim/orbital_elements.hpp"

namespace leosim {

/// Satellites bucketed into orbital planes. Each orbit lists element
/// indices (into the vector given to group_orbits) sorted ascending by
/// true anomaly at the reference epoch; orbits are ordered by RAAN.
struct ConstellationGeometry {
    struct Orbit {
        double inclination_rad = 0.0; // of the first bucketed member
        double raan_rad = 0.0;
        std::vector<std::uint32_t> members;
    };
    std::vector<Orbit> orbits;

    std::size_t satellite_count() const {
        std::size_t n = 0;
        for (const auto& o : orbits) n += o.members.size();
        return n;
    }
};

/// Buckets elements by (inclination, RAAN) within the given angular
/// tolerances; a satellite matching no bucket opens a new one. The
/// reference epoch for the true-anomaly sort is the latest element
/// epoch in the input.
ConstellationGeometry group_orbits(const std::vector<OrbitalElements>& elements,
                                   double inclination_tol_deg = 0.5, double raan_tol_deg = 1.0);

} // namespace leosim
