#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <future>
#include <random>
#include <sstream>

#include "leosim/constellation.hpp"
#include "leosim/errors.hpp"
#include "leosim/kepler.hpp"
#include "leosim/propagation.hpp"
#include "leosim/tle.hpp"
#include "leosim/walker.hpp"
#include "support/helpers.hpp"

using namespace leosim;
using test_support::kepler_bisection_oracle;

TEST_CASE("kepler solver handles the degenerate anchors") {
    CHECK(solve_eccentric_anomaly(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(solve_eccentric_anomaly(0.0, 0.7) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(solve_eccentric_anomaly(kPi, 0.5) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("kepler solver matches the bisection oracle") {
    const double oracle = kepler_bisection_oracle(1.0, 0.1);
    const double solved = solve_eccentric_anomaly(1.0, 0.1);
    CHECK(std::abs(solved - oracle) < 1e-10);
    CHECK(solved == doctest::Approx(1.0885977).epsilon(1e-6)); // frozen from the oracle
}

TEST_CASE("kepler residual stays below 1e-12 over the (e, M) grid") {
    for (int ei = 0; ei <= 9; ++ei) {
        const double e = 0.1 * ei;
        for (int mi = 0; mi < 1000; ++mi) {
            const double m = kTwoPi * mi / 1000.0;
            const double ea = solve_eccentric_anomaly(m, e);
            REQUIRE(std::abs(m - (ea - e * std::sin(ea))) < 1e-12);
        }
    }
}

TEST_CASE("kepler solver rejects invalid eccentricity") {
    CHECK_THROWS_AS(solve_eccentric_anomaly(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_eccentric_anomaly(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("true anomaly equals E for circular orbits") {
    for (int i = 0; i < 100; ++i) {
        const double ea = kTwoPi * i / 100.0;
        CHECK(true_anomaly_from_eccentric(ea, 0.0) == doctest::Approx(ea).epsilon(1e-12));
    }
}

TEST_CASE("true anomaly at E = pi is pi for any eccentricity") {
    CHECK(true_anomaly_from_eccentric(kPi, 0.3) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("true anomaly matches the explicit cosine formula with quadrant fix") {
    // Oracle: evaluate cos(nu) = (cos E - e) / (1 - e cos E) and put nu
    // into E's half-plane.
    const double e = 0.1;
    const double ea = solve_eccentric_anomaly(1.0, e);
    const double cos_nu = (std::cos(ea) - e) / (1.0 - e * std::cos(ea));
    double oracle = std::acos(cos_nu);
    if (std::sin(ea) < 0.0) oracle = kTwoPi - oracle;
    const double nu = true_anomaly_from_eccentric(ea, e);
    CHECK(nu == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(nu == doctest::Approx(1.1794693).epsilon(1e-6)); // frozen from the oracle
}

TEST_CASE("true anomaly is monotone in E and preserves the half-plane") {
    for (int ei = 0; ei <= 9; ++ei) {
        const double e = 0.1 * ei;
        double prev = -1.0;
        for (int i = 0; i < 2000; ++i) {
            const double ea = kTwoPi * i / 2000.0;
            const double nu = true_anomaly_from_eccentric(ea, e);
            REQUIRE(nu >= 0.0);
            REQUIRE(nu < kTwoPi);
            if (i > 0) REQUIRE(nu > prev);
            prev = nu;
            const double ss = std::sin(nu) * std::sin(ea);
            REQUIRE(ss >= -1e-12); // never in opposite half-planes
        }
    }
}

TEST_CASE("walker generator spaces mean anomaly evenly") {
    const auto els = generate_walker(1, 4, 550.0, 53.0, 0);
    REQUIRE(els.size() == 4);
    CHECK(els[0].mean_anomaly_rad == doctest::Approx(0.0));
    CHECK(els[1].mean_anomaly_rad == doctest::Approx(kPi / 2.0));
    CHECK(els[2].mean_anomaly_rad == doctest::Approx(kPi));
    CHECK(els[3].mean_anomaly_rad == doctest::Approx(3.0 * kPi / 2.0));
    for (const auto& el : els) CHECK(el.eccentricity == 0.0);
}

TEST_CASE("walker generator emits the full shell") {
    const auto els = generate_walker(72, 22, 550.0, 53.0, 0);
    CHECK(els.size() == 1584);
}

TEST_CASE("walker mean motion follows Kepler's third law") {
    // Oracle: T = 2*pi*sqrt(a^3/mu), a = 6928.137 km.
    const double a = 6378.137 + 550.0;
    const double period = kTwoPi * std::sqrt(a * a * a / 398600.4418);
    const double oracle_rev_day = 86400.0 / period;
    const auto els = generate_walker(3, 4, 550.0, 53.0, 1);
    CHECK(els[0].mean_motion_rev_day == doctest::Approx(oracle_rev_day).epsilon(1e-12));
    CHECK(std::abs(els[0].mean_motion_rev_day - 15.05) < 0.01);
}

TEST_CASE("walker validates altitude and counts") {
    CHECK_THROWS_AS(generate_walker(1, 4, 250.0, 53.0, 0), std::out_of_range);
    CHECK_THROWS_AS(generate_walker(1, 4, 2500.0, 53.0, 0), std::out_of_range);
    CHECK_THROWS_AS(generate_walker(0, 4, 550.0, 53.0, 0), std::invalid_argument);
}

TEST_CASE("walker phasing shifts adjacent planes") {
    const auto els = generate_walker(4, 5, 550.0, 53.0, 3);
    // Satellite 0 of orbit 1 is offset by phasing * 2*pi / (4*5).
    CHECK(els[5].mean_anomaly_rad == doctest::Approx(3.0 * kTwoPi / 20.0));
}

TEST_CASE("TLE round-trips a generated shell") {
    const auto els = generate_walker(2, 3, 550.0, 53.0, 1);
    const std::string text = format_tle(els);
    const auto parsed = parse_tle(text);
    REQUIRE(parsed.size() == els.size());
    for (std::size_t i = 0; i < els.size(); ++i) {
        CHECK(parsed[i].satellite_id == els[i].satellite_id);
        CHECK(parsed[i].name == els[i].name);
        CHECK(parsed[i].epoch == els[i].epoch);
        CHECK(parsed[i].eccentricity == doctest::Approx(els[i].eccentricity).epsilon(1e-7));
        CHECK(std::abs(parsed[i].inclination_rad - els[i].inclination_rad) < 1e-5);
        CHECK(std::abs(parsed[i].raan_rad - els[i].raan_rad) < 1e-5);
        CHECK(std::abs(parsed[i].mean_anomaly_rad - els[i].mean_anomaly_rad) < 1e-5);
        CHECK(std::abs(parsed[i].mean_motion_rev_day - els[i].mean_motion_rev_day) < 1e-7);
    }
}

TEST_CASE("TLE parser counts records") {
    const auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    const std::string text = format_tle({els[0], els[1]});
    CHECK(parse_tle(text).size() == 2);
}

TEST_CASE("TLE parser reports a corrupted checksum with its line number") {
    const auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    std::string text = format_tle({els[0]});
    // Corrupt a digit inside line 2 of the first record (document line 3)
    // without touching its checksum column.
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l)) lines.push_back(l);
    }
    REQUIRE(lines.size() == 3);
    std::string& l2 = lines[2];
    const std::size_t pos = 20;
    l2[pos] = l2[pos] == '9' ? '8' : '9';
    const std::string corrupted = lines[0] + "\n" + lines[1] + "\n" + l2 + "\n";
    try {
        parse_tle(corrupted);
        FAIL("expected TleError");
    } catch (const TleError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        // Oracle: recompute the digit sum the checksum rule defines.
        const int expected = tle_line_checksum(l2);
        CHECK(std::string(e.what()).find("expected " + std::to_string(expected)) !=
              std::string::npos);
    }
}

TEST_CASE("TLE implied-decimal eccentricity field") {
    auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    els[0].eccentricity = 0.0001; // serializes as "0001000"
    const std::string text = format_tle({els[0]});
    CHECK(text.find("0001000") != std::string::npos);
    const auto parsed = parse_tle(text);
    CHECK(parsed[0].eccentricity == doctest::Approx(0.0001).epsilon(1e-12));
}

TEST_CASE("TLE parser rejects dangling element lines") {
    const auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    std::string text = format_tle({els[0]});
    const auto cut = text.rfind("2 ");
    CHECK_THROWS_AS(parse_tle(text.substr(0, cut)), TleError);
}

TEST_CASE("group_orbits buckets a walker shell and sorts by true anomaly") {
    const auto els = generate_walker(2, 3, 550.0, 53.0, 0);
    const auto geo = group_orbits(els);
    REQUIRE(geo.orbits.size() == 2);
    for (const auto& orbit : geo.orbits) {
        REQUIRE(orbit.members.size() == 3);
        // e = 0, so true anomaly order is mean anomaly order.
        for (std::size_t i = 1; i < orbit.members.size(); ++i) {
            CHECK(els[orbit.members[i]].mean_anomaly_rad >
                  els[orbit.members[i - 1]].mean_anomaly_rad);
        }
    }
}

TEST_CASE("group_orbits handles the full shell") {
    const auto els = generate_walker(72, 22, 550.0, 53.0, 17);
    const auto geo = group_orbits(els);
    REQUIRE(geo.orbits.size() == 72);
    for (const auto& orbit : geo.orbits) CHECK(orbit.members.size() == 22);
}

TEST_CASE("group_orbits merges nearby RAAN within tolerance") {
    auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    auto shifted = els;
    for (auto& el : shifted) {
        el.raan_rad = deg_to_rad(10.3);
        el.satellite_id += 100;
    }
    for (auto& el : els) el.raan_rad = deg_to_rad(10.0);
    std::vector<OrbitalElements> all = els;
    all.insert(all.end(), shifted.begin(), shifted.end());
    const auto geo = group_orbits(all);
    CHECK(geo.orbits.size() == 1); // 0.3 deg apart, tolerance 1 deg
}

TEST_CASE("group_orbits is a partition") {
    auto els = generate_walker(5, 7, 550.0, 53.0, 2);
    std::mt19937 rng(7);
    std::shuffle(els.begin(), els.end(), rng);
    const auto geo = group_orbits(els);
    std::vector<bool> seen(els.size(), false);
    for (const auto& orbit : geo.orbits) {
        for (std::uint32_t idx : orbit.members) {
            REQUIRE(idx < els.size());
            REQUIRE(!seen[idx]);
            seen[idx] = true;
        }
    }
    for (bool s : seen) CHECK(s);
}

TEST_CASE("group_orbits rejects empty input") {
    CHECK_THROWS_AS(group_orbits({}), std::invalid_argument);
}

TEST_CASE("propagation keeps a circular orbit at constant radius") {
    const auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    const KeplerianPropagator prop;
    for (int h = 0; h <= 24; ++h) {
        const auto st = prop.propagate(els[0], els[0].epoch + h * 3600000LL);
        CHECK(std::abs(st.altitude_km - 550.0) < 1.0);
        CHECK(std::abs(st.ecef_km.norm() - (kEarthEquatorialRadiusKm + st.altitude_km)) < 1.0);
    }
}

TEST_CASE("propagation at the epoch matches an independent rotation chain") {
    OrbitalElements el;
    el.epoch = 1735689600000LL;
    el.inclination_rad = 0.9;
    el.raan_rad = 0.5;
    el.eccentricity = 0.01;
    el.arg_perigee_rad = 0.3;
    el.mean_anomaly_rad = 1.2;
    el.mean_motion_rev_day = 15.05;
    el.satellite_id = 1;

    // Oracle: assemble the ECI position with explicit matrix products.
    const double n = el.mean_motion_rev_day * kTwoPi / 86400.0;
    const double a = std::cbrt(kMuEarthKm3S2 / (n * n));
    const double E = kepler_bisection_oracle(el.mean_anomaly_rad, el.eccentricity);
    const double nu = 2.0 * std::atan2(std::sqrt(1.01) * std::sin(E / 2.0),
                                       std::sqrt(0.99) * std::cos(E / 2.0));
    const double r = a * (1.0 - el.eccentricity * std::cos(E));
    const double u = el.arg_perigee_rad + nu; // argument of latitude
    const double ci = std::cos(el.inclination_rad), si = std::sin(el.inclination_rad);
    const double co = std::cos(el.raan_rad), so = std::sin(el.raan_rad);
    const double cu = std::cos(u), su = std::sin(u);
    const Vec3 oracle{r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * (su * si)};

    const KeplerianPropagator prop;
    const auto st = prop.propagate(el, el.epoch);
    CHECK(std::abs(st.eci_km.x - oracle.x) < 1e-6);
    CHECK(std::abs(st.eci_km.y - oracle.y) < 1e-6);
    CHECK(std::abs(st.eci_km.z - oracle.z) < 1e-6);
}

TEST_CASE("propagation returns to the same ECI point after one period") {
    const auto els = generate_walker(1, 3, 550.0, 53.0, 0);
    const KeplerianPropagator prop;
    const double period_ms = 86400000.0 / els[0].mean_motion_rev_day;
    const auto st0 = prop.propagate(els[0], els[0].epoch);
    const auto st1 = prop.propagate(els[0], els[0].epoch + static_cast<UtcMillis>(period_ms));
    CHECK((st0.eci_km - st1.eci_km).norm() < 1.0);
}

TEST_CASE("propagation is safe to run concurrently") {
    const auto els = generate_walker(1, 4, 550.0, 53.0, 0);
    const KeplerianPropagator prop;
    const UtcMillis t = els[0].epoch + 1234567;
    const auto reference = prop.propagate(els[0], t);
    std::vector<std::future<SatelliteState>> futures;
    for (int i = 0; i < 8; ++i) {
        futures.push_back(std::async(std::launch::async,
                                     [&] { return prop.propagate(els[0], t); }));
    }
    for (auto& f : futures) {
        const auto st = f.get();
        CHECK(st.ecef_km.x == reference.ecef_km.x);
        CHECK(st.ecef_km.y == reference.ecef_km.y);
        CHECK(st.ecef_km.z == reference.ecef_km.z);
    }
}

TEST_CASE("geodetic conversions round-trip") {
    const Geodetic g{51.5, -0.12, 0.03};
    const Vec3 p = geodetic_to_ecef(g);
    const Geodetic back = ecef_to_geodetic(p);
    CHECK(back.lat_deg == doctest::Approx(g.lat_deg).epsilon(1e-9));
    CHECK(back.lon_deg == doctest::Approx(g.lon_deg).epsilon(1e-9));
    CHECK(back.alt_km == doctest::Approx(g.alt_km).epsilon(1e-6));
}
