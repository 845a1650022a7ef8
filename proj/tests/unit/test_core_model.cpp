#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "courtfilter/core_model.hpp"

using namespace courtfilter;

TEST_CASE("planar_speed on reference inputs") {
    CHECK(planar_speed(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(planar_speed(0.0, 0.0) == 0.0);
    CHECK(planar_speed(-6.0, 8.0) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("planar_speed rejects non-finite components") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(planar_speed(nan, 0.0), ContractError);
    CHECK_THROWS_AS(planar_speed(0.0, inf), ContractError);
    CHECK_THROWS_AS(planar_speed(-inf, nan), ContractError);
}

TEST_CASE("planar_speed symmetry properties") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = dist(rng);
        const double b = dist(rng);
        CHECK(planar_speed(a, b) == planar_speed(std::abs(a), std::abs(b)));
        CHECK(planar_speed(a, b) == planar_speed(b, a));
        CHECK(planar_speed(a, b) >= 0.0);
    }
}

TEST_CASE("in_court closed bounds") {
    const CourtGeometry geom;
    CHECK(in_court(0.0, 0.0, geom));
    CHECK_FALSE(in_court(1500.0, 0.0, geom));
    CHECK(in_court(-1400.0, 750.0, geom));
    CHECK_FALSE(in_court(0.0, 750.1, geom));
}

TEST_CASE("in_ftsa closed disc around either center") {
    const CourtGeometry geom;
    CHECK(in_ftsa(820.0, 0.0, geom));
    CHECK_FALSE(in_ftsa(820.0, 181.0, geom));
    CHECK_FALSE(in_ftsa(0.0, 0.0, geom));
    CHECK(in_ftsa(-820.0, 0.0, geom));
    CHECK(in_ftsa(820.0, 180.0, geom));  // boundary included
    CHECK(in_ftsa(1000.0, 0.0, geom));
    CHECK_FALSE(in_ftsa(1000.1, 0.0, geom));
}

TEST_CASE("in_ftsa court symmetry") {
    const CourtGeometry geom;
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> x(-1400.0, 1400.0);
    std::uniform_real_distribution<double> y(-750.0, 750.0);
    for (int i = 0; i < 1000; ++i) {
        const double px = x(rng);
        const double py = y(rng);
        CHECK(in_ftsa(px, py, geom) == in_ftsa(-px, py, geom));
        CHECK(in_ftsa(px, py, geom) == in_ftsa(px, -py, geom));
    }
}

TEST_CASE("in_ftsa implies in_court when the disc fits the court") {
    const CourtGeometry geom;  // 820 + 180 <= 1400 and 180 <= 750
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> x(-1600.0, 1600.0);
    std::uniform_real_distribution<double> y(-900.0, 900.0);
    for (int i = 0; i < 2000; ++i) {
        const double px = x(rng);
        const double py = y(rng);
        if (in_ftsa(px, py, geom)) CHECK(in_court(px, py, geom));
    }
}

TEST_CASE("geometry validation") {
    CourtGeometry geom;
    CHECK_NOTHROW(geom.validate());
    geom.half_length_cm = 0.0;
    CHECK_THROWS_AS(geom.validate(), ContractError);
    geom = CourtGeometry{};
    geom.ftsa_center_abs_x_cm = 1400.0;
    CHECK_THROWS_AS(geom.validate(), ContractError);
    geom = CourtGeometry{};
    geom.ftsa_radius_cm = 800.0;
    CHECK_THROWS_AS(geom.validate(), ContractError);
}
