#pragma once

#include "leosim/orbital_elements.hpp"

namespace leosim {

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle_rad);

/// Solves M = E - e*sin(E) for E by Newton iteration. E is returned in
/// the same branch as the given M (no wrapping), so the residual
/// |M - (E - e*sin E)| is below 1e-12 against M exactly as passed.
/// Requires 0 <= e < 1.
double solve_eccentric_anomaly(double mean_anomaly_rad, double eccentricity);

/// True anomaly from eccentric anomaly via the half-angle tangent
/// identity; preserves the half-plane of E and returns [0, 2*pi).
double true_anomaly_from_eccentric(double eccentric_anomaly_rad, double eccentricity);

AnomalySolution solve_anomalies(double mean_anomaly_rad, double eccentricity);

} // namespace leosim
