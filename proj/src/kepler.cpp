#include "leosim/kepler.hpp"

#include <cmath>
#include <stdexcept>

#include "leosim/geodesy.hpp"

namespace leosim {

double wrap_two_pi(double angle_rad) {
    double a = std::fmod(angle_rad, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

double solve_eccentric_anomaly(double mean_anomaly_rad, double eccentricity) {
    if (eccentricity < 0.0 || eccentricity >= 1.0) {
        throw std::invalid_argument("eccentricity must be in [0, 1)");
    }
    const double m = mean_anomaly_rad;
    const double e = eccentricity;
    if (e == 0.0) return m;

    // High-eccentricity starts converge more reliably from pi.
    double ea = (e > 0.8) ? kPi : m;
    constexpr double kTol = 2.5e-13;
    for (int i = 0; i < 50; ++i) {
        const double f = ea - e * std::sin(ea) - m;
        if (std::abs(f) < kTol) return ea;
        ea -= f / (1.0 - e * std::cos(ea));
    }
    if (std::abs(ea - e * std::sin(ea) - m) < kTol) return ea;
    throw std::logic_error("Kepler solver did not converge in 50 iterations");
}

double true_anomaly_from_eccentric(double eccentric_anomaly_rad, double eccentricity) {
    if (eccentricity < 0.0 || eccentricity >= 1.0) {
        throw std::invalid_argument("eccentricity must be in [0, 1)");
    }
    const double e = eccentricity;
    const double half = eccentric_anomaly_rad / 2.0;
    const double nu =
        2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half), std::sqrt(1.0 - e) * std::cos(half));
    return wrap_two_pi(nu);
}

AnomalySolution solve_anomalies(double mean_anomaly_rad, double eccentricity) {
    const double ea = solve_eccentric_anomaly(mean_anomaly_rad, eccentricity);
    return {ea, true_anomaly_from_eccentric(ea, eccentricity)};
}

} // namespace leosim
