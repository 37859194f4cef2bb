#include <catch2/catch_amalgamated.hpp>

#include "mobjul/sphere.hpp"
#include "mobjul/rng.hpp"
#include "test_support.hpp"

using namespace mobjul;

TEST_CASE("chordal distance on worked points", "[sphere]") {
    CHECK(chordal_distance(SpherePoint(0, 0), SpherePoint(0, 0)) == 0.0);
    CHECK(chordal_distance(SpherePoint(0, 0), SpherePoint::infinity()) == 2.0);
    // d(1, i) = 2|1-i|/sqrt(2*2) = sqrt(2)
    CHECK_THAT(chordal_distance(SpherePoint(1, 0), SpherePoint(0, 1)),
               Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
}

TEST_CASE("chordal distance is a symmetric metric bounded by 2", "[sphere]") {
    SplitMix64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        const auto p = testsupport::random_point(rng);
        const auto q = testsupport::random_point(rng);
        const auto r = testsupport::random_point(rng);
        const double dpq = chordal_distance(p, q);
        CHECK(dpq == chordal_distance(q, p));
        CHECK(dpq >= 0.0);
        CHECK(dpq <= 2.0);
        CHECK(chordal_distance(p, q) <= chordal_distance(p, r) + chordal_distance(r, q) + 1e-12);
    }
}

TEST_CASE("chordal distance is continuous across the infinity chart", "[sphere]") {
    for (double mag : {1e8, 1e9, 1e12}) {
        const SpherePoint big(mag, mag * 0.5);
        CHECK(chordal_distance(big, SpherePoint::infinity()) < 2e-8 + 1e-12);
    }
}

TEST_CASE("identity of indiscernibles", "[sphere]") {
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto p = testsupport::random_point(rng);
        CHECK(chordal_distance(p, p) == 0.0);
        const auto q = testsupport::random_point(rng);
        if (p != q) CHECK(chordal_distance(p, q) > 0.0);
    }
}

TEST_CASE("distance to a finite set", "[sphere]") {
    CHECK(distance_to_set(SpherePoint(0, 0), {SpherePoint(0, 0), SpherePoint(1, 0)}) == 0.0);
    CHECK(distance_to_set(SpherePoint::infinity(), {SpherePoint(0, 0)}) == 2.0);
    CHECK_THAT(distance_to_set(SpherePoint(1, 0), {SpherePoint(0, 1), SpherePoint(0, -1)}),
               Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK_THROWS_AS(distance_to_set(SpherePoint(0, 0), {}), std::invalid_argument);
}

TEST_CASE("sphere embedding realizes the chordal metric", "[sphere]") {
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto p = testsupport::random_point(rng);
        const auto q = testsupport::random_point(rng);
        const auto a = embed3(p);
        const auto b = embed3(q);
        const double euclid = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) +
                                        (a[1] - b[1]) * (a[1] - b[1]) +
                                        (a[2] - b[2]) * (a[2] - b[2]));
        CHECK_THAT(euclid, Catch::Matchers::WithinAbs(chordal_distance(p, q), 1e-12));
    }
}

TEST_CASE("near-infinity snap", "[sphere]") {
    CHECK(snap_to_sphere(Complex(1e16, 0)).is_infinity());
    CHECK(snap_to_sphere(Complex(1e14, 0)).is_finite());
    CHECK(snap_to_sphere(Complex(0.0, 0.0)) == SpherePoint(0, 0));
}
