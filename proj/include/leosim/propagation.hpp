#pragma once

#include "leosim/geodesy.hpp"
#include "leosim/orbital_elements.hpp"

namespace leosim {

/// Instantaneous satellite state. altitude_km is the radial height
/// above the equatorial radius (|ecef| - a_wgs84), which is constant
/// for circular orbits; lat/lon are geodetic on WGS-84.
struct SatelliteState {
    UtcMillis t = 0;
    Vec3 ecef_km;
    Vec3 eci_km;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double altitude_km = 0.0;
};

/// Orbit propagator interface. Implementations must be pure (safe to
/// call concurrently on the same instance).
class Propagator {
public:
    virtual ~Propagator() = default;
    virtual SatelliteState propagate(const OrbitalElements& elements, UtcMillis t) const = 0;
};

/// Two-body Keplerian propagation with Earth rotation for the ECEF
/// frame. Higher-precision propagators (J2/J4/SGP4) plug in behind the
/// same interface.
class KeplerianPropagator final : public Propagator {
public:
    SatelliteState propagate(const OrbitalElements& elements, UtcMillis t) const override;
};

} // namespace leosim
