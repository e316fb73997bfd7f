#include "leosim/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leosim {

std::optional<double> LinkValueMatrix::at(std::uint32_t i, std::uint32_t j) const {
    const auto it = std::lower_bound(edges.begin(), edges.end(), Edge{i, j});
    if (it == edges.end() || !(*it == Edge{i, j})) return std::nullopt;
    return values[static_cast<std::size_t>(it - edges.begin())];
}

double propagation_delay_ms(double distance_km) {
    if (distance_km <= 0.0) throw std::invalid_argument("distance must be positive");
    return distance_km / kSpeedOfLightKmPerS * 1000.0;
}

double fspl_db(double distance_km, double frequency_hz) {
    if (distance_km <= 0.0 || frequency_hz <= 0.0) {
        throw std::invalid_argument("distance and frequency must be positive");
    }
    constexpr double c_m_per_s = 299792458.0;
    const double d_m = distance_km * 1000.0;
    return 20.0 * std::log10(4.0 * kPi * d_m * frequency_hz / c_m_per_s);
}

namespace {

// Power-law rain coefficients at anchor frequencies (GHz -> k, alpha),
// horizontal polarization. gamma = k * R^alpha in dB/km.
struct RainAnchor {
    double f_ghz;
    double k;
    double alpha;
};

constexpr RainAnchor kRainAnchors[] = {
    {1.0, 0.0000259, 0.9691}, {10.0, 0.01217, 1.2571}, {12.0, 0.02386, 1.1825},
    {15.0, 0.04481, 1.1233},  {20.0, 0.09164, 1.0568}, {25.0, 0.1571, 1.0000},
    {30.0, 0.2403, 0.9485},   {35.0, 0.3374, 0.9047},  {40.0, 0.4431, 0.8673},
    {50.0, 0.6600, 0.8084},   {100.0, 1.3594, 0.7109},
};

constexpr double kRainHeightKm = 4.0;
constexpr double kMaxSlantPathKm = 20.0;

void rain_coefficients(double f_ghz, double& k, double& alpha) {
    const auto* first = std::begin(kRainAnchors);
    const auto* last = std::end(kRainAnchors) - 1;
    if (f_ghz <= first->f_ghz) {
        k = first->k;
        alpha = first->alpha;
        return;
    }
    if (f_ghz >= last->f_ghz) {
        k = last->k;
        alpha = last->alpha;
        return;
    }
    const RainAnchor* hi = first + 1;
    while (hi->f_ghz < f_ghz) ++hi;
    const RainAnchor* lo = hi - 1;
    const double u = (std::log10(f_ghz) - std::log10(lo->f_ghz)) /
                     (std::log10(hi->f_ghz) - std::log10(lo->f_ghz));
    k = std::pow(10.0, std::log10(lo->k) + u * (std::log10(hi->k) - std::log10(lo->k)));
    alpha = lo->alpha + u * (hi->alpha - lo->alpha);
}

} // namespace

double rain_attenuation_db(const WeatherSample& weather, double frequency_hz,
                           double elevation_deg) {
    if (elevation_deg <= 0.0 || elevation_deg > 90.0) {
        throw std::invalid_argument("elevation must be in (0, 90]");
    }
    if (weather.rain_mm_h <= 0.0) return 0.0;
    double k = 0.0, alpha = 0.0;
    rain_coefficients(frequency_hz / 1e9, k, alpha);
    const double gamma = k * std::pow(weather.rain_mm_h, alpha);
    const double path = std::min(kRainHeightKm / std::sin(deg_to_rad(elevation_deg)),
                                 kMaxSlantPathKm);
    return gamma * path;
}

double snr_db(const RfParameters& rf, double distance_km, double elevation_deg,
              const WeatherSample& weather) {
    // Boltzmann term fixed at +228.6 dB (-10*log10 of k_B, to 0.1 dB).
    return rf.eirp_dbw + rf.g_over_t_db_k - fspl_db(distance_km, rf.frequency_hz) -
           rf.fixed_losses_db - rain_attenuation_db(weather, rf.frequency_hz, elevation_deg) +
           228.6 - 10.0 * std::log10(rf.bandwidth_hz);
}

double gsl_capacity_mbps(double snr_db_value, double bandwidth_hz, double cell_density) {
    if (cell_density <= 0.0 || cell_density > 1.0) {
        throw std::invalid_argument("cell density must be in (0, 1]");
    }
    return cell_density * bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr_db_value / 10.0)) /
           1e6;
}

LinkCharacterization characterize(const ConnectivityMatrix& connectivity,
                                  const std::vector<SatelliteState>& sat_states,
                                  const std::vector<GroundSite>& grounds, const RfParameters& rf,
                                  WeatherProvider& weather, UtcMillis t,
                                  std::uint32_t satellite_count) {
    LinkCharacterization out;
    out.latency.n = connectivity.n;
    out.capacity.n = connectivity.n;
    out.latency.edges = connectivity.edges;
    out.capacity.edges = connectivity.edges;
    out.latency.values.reserve(connectivity.edges.size());
    out.capacity.values.reserve(connectivity.edges.size());
    out.snr_db.reserve(connectivity.edges.size());

    const auto position = [&](std::uint32_t node) -> Vec3 {
        if (node < satellite_count) return sat_states[node].ecef_km;
        return grounds[node - satellite_count].ecef_km;
    };

    for (const Edge& e : connectivity.edges) {
        const Vec3 pa = position(e.a);
        const Vec3 pb = position(e.b);
        const double distance = (pa - pb).norm();
        out.latency.values.push_back(propagation_delay_ms(distance));

        const bool is_isl = e.a < satellite_count && e.b < satellite_count;
        if (is_isl) {
            out.capacity.values.push_back(rf.isl_capacity_mbps);
            out.snr_db.push_back(std::nullopt);
            continue;
        }
        // GSL: exactly one endpoint is a ground site (b, since grounds
        // come after satellites in the node order).
        const GroundSite& site = grounds[e.b - satellite_count];
        const Vec3& sat_pos = pa;
        const double elevation = elevation_deg(site.ecef_km, site.geodetic, sat_pos);
        WeatherSample sample;
        try {
            sample = weather.sample(site.geodetic.lat_deg, site.geodetic.lon_deg, t);
        } catch (const std::exception& ex) {
            sample = clear_sky(site.geodetic.lat_deg, site.geodetic.lon_deg, t);
            out.warnings.push_back("weather lookup failed for node " + std::to_string(e.b) +
                                   " (" + ex.what() + "); using clear sky");
        }
        const double snr = snr_db(rf, distance, std::max(elevation, 0.1), sample);
        out.capacity.values.push_back(gsl_capacity_mbps(snr, rf.bandwidth_hz, rf.cell_density));
        out.snr_db.push_back(snr);
    }
    return out;
}

} // namespace leosim
