#pragma once

#include <optional>
#include <vector>

#include "leosim/topology.hpp"
#include "leosim/weather.hpp"

namespace leosim {

/// Attributes of one established link.
struct LinkCharacteristics {
    double latency_ms = 0.0;
    double capacity_mbps = 0.0;
    std::optional<double> snr_db; // absent for ISLs
};

/// Per-timestep link values aligned with a connectivity edge list.
/// An entry is defined iff the corresponding connectivity entry is 1.
struct LinkValueMatrix {
    std::uint32_t n = 0;
    std::vector<Edge> edges; // sorted, mirrors connectivity support
    std::vector<double> values;

    std::optional<double> at(std::uint32_t i, std::uint32_t j) const;
};

using LatencyMatrix = LinkValueMatrix;  // milliseconds
using CapacityMatrix = LinkValueMatrix; // Mbps

/// One-way propagation delay in ms over a slant distance.
double propagation_delay_ms(double distance_km);

/// Free-space path loss, 20*log10(4*pi*d*f/c), dB.
double fspl_db(double distance_km, double frequency_hz);

/// Rain attenuation from a power-law specific attenuation (k, alpha
/// interpolated log-linearly between shipped anchor frequencies) over
/// an effective slant path through a 4 km rain layer, capped at 20 km.
double rain_attenuation_db(const WeatherSample& weather, double frequency_hz,
                           double elevation_deg);

/// Link budget:
///   SNR = EIRP + G/T - FSPL - fixed losses - rain + 228.6 - 10*log10(BW).
double snr_db(const RfParameters& rf, double distance_km, double elevation_deg,
              const WeatherSample& weather);

/// Fair-share Shannon capacity of a ground-satellite link, Mbps.
double gsl_capacity_mbps(double snr_db_value, double bandwidth_hz, double cell_density);

struct LinkCharacterization {
    LatencyMatrix latency;
    CapacityMatrix capacity;
    std::vector<std::optional<double>> snr_db; // aligned with connectivity edges
    std::vector<std::string> warnings;
};

/// Computes latency for every edge and capacity per link class: ISLs
/// carry the fixed configured capacity, GSLs go through the
/// SNR/Shannon chain with weather sampled at the ground endpoint. A
/// weather provider failure falls back to clear sky and appends a
/// warning.
LinkCharacterization characterize(const ConnectivityMatrix& connectivity,
                                  const std::vector<SatelliteState>& sat_states,
                                  const std::vector<GroundSite>& grounds, const RfParameters& rf,
                                  WeatherProvider& weather, UtcMillis t,
                                  std::uint32_t satellite_count);

} // namespace leosim
