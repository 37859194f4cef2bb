#include <catch2/catch_amalgamated.hpp>

#include "mobjul/moebius.hpp"
#include "mobjul/rng.hpp"
#include "test_support.hpp"

using namespace mobjul;
using testsupport::random_loxodromic_map;
using testsupport::random_map;
using testsupport::random_point;

namespace {
const MoebiusMap caruso_f(Complex(2, 0), 1.0, 1.0, 0.0);  // z -> 2 + 1/z
const MoebiusMap caruso_g(Complex(-2, 0), 1.0, 1.0, 0.0);
}  // namespace

TEST_CASE("apply on worked points", "[moebius]") {
    CHECK(apply(MoebiusMap::identity(), SpherePoint(1, 2)) == SpherePoint(1, 2));
    CHECK(apply(MoebiusMap::scaling(2.0), SpherePoint::infinity()).is_infinity());
    CHECK(apply(caruso_f, SpherePoint(0, 0)).is_infinity());  // pole of 2 + 1/z
    CHECK(points_coincide(apply(caruso_f, SpherePoint(1, 0)), SpherePoint(3, 0), 1e-12));
    CHECK(points_coincide(apply(caruso_f, SpherePoint::infinity()), SpherePoint(2, 0), 1e-12));
}

TEST_CASE("composition on worked maps", "[moebius]") {
    SplitMix64 rng(3);
    const auto m = random_map(rng);
    CHECK(maps_equal(compose(m, MoebiusMap::identity()), m, 1e-12));
    CHECK(maps_equal(compose(MoebiusMap::scaling(2.0), MoebiusMap::scaling(0.5)),
                     MoebiusMap::identity(), 1e-12));
    // [[2,1],[1,0]] * [[-2,1],[1,0]] = [[-3,2],[-2,1]]
    CHECK(maps_equal(compose(caruso_f, caruso_g), MoebiusMap(-3.0, 2.0, -2.0, 1.0), 1e-12));
}

TEST_CASE("inverse on worked maps", "[moebius]") {
    CHECK(maps_equal(inverse(MoebiusMap::identity()), MoebiusMap::identity(), 1e-15));
    CHECK(maps_equal(inverse(MoebiusMap::scaling(2.0)), MoebiusMap::scaling(0.5), 1e-15));
    // Adjugate of [[2,1],[1,0]] is [[0,1],[1,-2]], i.e. z -> 1/(z-2).
    const auto finv = inverse(caruso_f);
    CHECK(maps_equal(finv, MoebiusMap(0.0, 1.0, 1.0, -2.0), 1e-15));
    const auto back = apply(finv, apply(caruso_f, SpherePoint(1, 0)));
    CHECK(points_coincide(back, SpherePoint(1, 0), 1e-12));
}

TEST_CASE("trace squared invariant on worked maps", "[moebius]") {
    CHECK_THAT(trace_squared_invariant(MoebiusMap::translation(1.0)).real(),
               Catch::Matchers::WithinAbs(4.0, 1e-12));
    CHECK_THAT(trace_squared_invariant(MoebiusMap::scaling(2.0)).real(),
               Catch::Matchers::WithinAbs(4.5, 1e-12));
    const auto t = trace_squared_invariant(caruso_f);  // beta^2/det = 4/(-1)
    CHECK_THAT(t.real(), Catch::Matchers::WithinAbs(-4.0, 1e-12));
    CHECK_THAT(t.imag(), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("classification of the four worked classes", "[moebius]") {
    CHECK(classify(MoebiusMap::translation(1.0)) == MapClass::parabolic);
    CHECK(classify(MoebiusMap::scaling(2.0)) == MapClass::hyperbolic);
    const double theta = 2.0 * 3.14159265358979323846 / 5.0;
    const MoebiusMap rot(Complex(std::cos(theta), std::sin(theta)), 0.0, 0.0, 1.0);
    CHECK(classify(rot) == MapClass::elliptic);
    CHECK_THAT(trace_squared_invariant(rot).real(),
               Catch::Matchers::WithinAbs(2.0 + 2.0 * std::cos(theta), 1e-12));
    CHECK(classify(caruso_f) == MapClass::strictly_loxodromic);
    CHECK(classify(MoebiusMap::identity()) == MapClass::identity);
}

TEST_CASE("fixed points of worked maps", "[moebius]") {
    const auto lin = fixed_points(MoebiusMap::scaling(2.0));
    REQUIRE(lin.points.size() == 2);
    bool saw_zero = false, saw_inf = false;
    for (const auto& fp : lin.points) {
        if (fp.point.is_infinity()) {
            saw_inf = true;
            CHECK(fp.kind == FixedPointKind::attracting);
            CHECK_THAT(std::abs(*fp.multiplier), Catch::Matchers::WithinAbs(0.5, 1e-12));
        } else {
            saw_zero = true;
            CHECK(points_coincide(fp.point, SpherePoint(0, 0), 1e-12));
            CHECK(fp.kind == FixedPointKind::repelling);
            CHECK_THAT(std::abs(*fp.multiplier), Catch::Matchers::WithinAbs(2.0, 1e-12));
        }
    }
    CHECK((saw_zero && saw_inf));

    const auto par = fixed_points(MoebiusMap::translation(1.0));
    REQUIRE(par.points.size() == 1);
    CHECK(par.parabolic);
    CHECK(par.points[0].point.is_infinity());
    CHECK(par.points[0].kind == FixedPointKind::neutral);
    CHECK_FALSE(par.points[0].multiplier.has_value());

    // Caruso f at beta = 2: fixed points 1 +- sqrt(2).
    const auto car = fixed_points(caruso_f);
    REQUIRE(car.points.size() == 2);
    const double s2 = std::sqrt(2.0);
    int attracting = 0, repelling = 0;
    for (const auto& fp : car.points) {
        const bool plus = points_coincide(fp.point, SpherePoint(1 + s2, 0), 1e-9);
        const bool minus = points_coincide(fp.point, SpherePoint(1 - s2, 0), 1e-9);
        CHECK((plus || minus));
        attracting += fp.kind == FixedPointKind::attracting;
        repelling += fp.kind == FixedPointKind::repelling;
    }
    CHECK(attracting == 1);
    CHECK(repelling == 1);

    CHECK_THROWS_AS(fixed_points(MoebiusMap::identity()), std::invalid_argument);
}

TEST_CASE("invariants over random maps", "[moebius]") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const auto m = random_map(rng);

        // Scale invariance of tr^2 after canonical normalization.
        const Complex lambda = testsupport::random_complex(rng, 5.0);
        if (std::abs(lambda) > 1e-3) {
            const MoebiusMap scaled(lambda * m.a(), lambda * m.b(), lambda * m.c(),
                                    lambda * m.d());
            CHECK(std::abs(trace_squared_invariant(scaled) - trace_squared_invariant(m)) < 1e-9);
        }

        // Inverse preserves the class (adjugate has the same trace).
        CHECK(classify(inverse(m)) == classify(m));

        // Conjugation preserves the class.
        const auto h = random_map(rng);
        const auto conj = compose(h, compose(m, inverse(h)));
        CHECK(classify(conj) == classify(m));

        // Composition consistency and inverse round trip at random points,
        // including infinity and points near poles.
        const auto n = random_map(rng);
        const auto z = random_point(rng);
        const auto lhs = apply(compose(m, n), z);
        const auto rhs = apply(m, apply(n, z));
        CHECK(chordal_distance(lhs, rhs) < 1e-9);
        CHECK(chordal_distance(apply(inverse(m), apply(m, z)), z) < 1e-9);
    }
}

TEST_CASE("loxodromic multiplier structure", "[moebius]") {
    SplitMix64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        const auto m = random_loxodromic_map(rng);
        const auto report = fixed_points(m);
        REQUIRE(report.points.size() == 2);

        // Fixed-point residual.
        for (const auto& fp : report.points)
            CHECK(chordal_distance(apply(m, fp.point), fp.point) < 1e-9);

        // Multipliers multiply to 1.
        const Complex prod = *report.points[0].multiplier * *report.points[1].multiplier;
        CHECK(std::abs(prod - 1.0) < 1e-9);

        // The attracting fixed point of m is the repelling fixed point of
        // its inverse.
        const auto inv_report = fixed_points(inverse(m));
        for (const auto& fp : report.points) {
            if (fp.kind != FixedPointKind::attracting) continue;
            bool matched = false;
            for (const auto& ifp : inv_report.points)
                if (ifp.kind == FixedPointKind::repelling &&
                    chordal_distance(fp.point, ifp.point) < 1e-9)
                    matched = true;
            CHECK(matched);
        }
    }
}
