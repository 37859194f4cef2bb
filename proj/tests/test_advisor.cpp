#include <catch2/catch_amalgamated.hpp>

#include "mobjul/advisor.hpp"
#include "test_support.hpp"

using namespace mobjul;

TEST_CASE("exceptional orbit heuristic on worked cases", "[advisor]") {
    // <2z>: the backward orbit of 0 is {0}.
    const GeneratorSet two({MoebiusMap::scaling(2.0)}, {"d"});
    const auto probe0 = exceptional_orbit_heuristic(two, SpherePoint(0, 0));
    CHECK(probe0.verdict == OrbitFiniteness::finite_suspected);
    CHECK(probe0.points.size() == 1);

    // mixed_exceptional: 0 is fixed by both inverse generators.
    const auto mix = mixed_exceptional();
    const auto probe_mix = exceptional_orbit_heuristic(mix, SpherePoint(0, 0));
    CHECK(probe_mix.verdict == OrbitFiniteness::finite_suspected);
    CHECK(probe_mix.points.size() == 1);

    // caruso(2) from a generator fixed point: the tree outgrows the bound.
    const auto car = caruso(Complex(2, 0));
    const auto probe_car =
        exceptional_orbit_heuristic(car, SpherePoint(1.0 + std::sqrt(2.0), 0), 10, 64);
    CHECK(probe_car.verdict == OrbitFiniteness::not_finite);
    CHECK(probe_car.depth_reached <= 8);
}

TEST_CASE("advisor flags the known counterexamples and supports caruso", "[advisor]") {
    AdvisorConfig cfg;
    cfg.raster.full_depth = 160;
    cfg.raster.resolution = 256;

    SECTION("caruso(1+i): lemma 5.1 supported, lemma 5.3 fails") {
        const auto report =
            precondition_advisor(caruso(Complex(1, 1)), ProbabilityVector::uniform(2), cfg);
        const auto* l51 = report.find("lemma_5_1_for_G");
        REQUIRE(l51 != nullptr);
        CHECK(l51->passed);
        CHECK(l51->heuristic);
        const auto* l53 = report.find("lemma_5_3_for_G");
        REQUIRE(l53 != nullptr);
        CHECK_FALSE(l53->passed);  // rasters intersect near +-1, +-i
        const auto* disjoint = report.find("rasters_disjoint");
        REQUIRE(disjoint != nullptr);
        CHECK_FALSE(disjoint->passed);
        const auto* headline = report.find("j_ker_inverse_empty_supported");
        REQUIRE(headline != nullptr);
        CHECK(headline->passed);
    }

    SECTION("dilation_pair: kernel Julia set evidence") {
        const auto report =
            precondition_advisor(dilation_pair(), ProbabilityVector::uniform(2), cfg);
        const auto* kernel = report.find("j_ker_inverse_nonempty_evidence");
        REQUIRE(kernel != nullptr);
        CHECK_FALSE(kernel->passed);  // evidence found: the check fails
        CHECK(kernel->statistic >= 2.0);  // both 0 and infinity reported
        CHECK(kernel->note.find("inf") != std::string::npos);
    }

    SECTION("mixed_exceptional: E(G) meets J(G) at 0") {
        const auto report =
            precondition_advisor(mixed_exceptional(), ProbabilityVector::uniform(2), cfg);
        const auto* exc = report.find("exceptional_meets_julia");
        REQUIRE(exc != nullptr);
        CHECK_FALSE(exc->passed);
        CHECK(exc->note.find("0+0i") != std::string::npos);
    }
}

TEST_CASE("advisor report is deterministic", "[advisor]") {
    AdvisorConfig cfg;
    cfg.raster.full_depth = 60;
    cfg.raster.resolution = 128;
    const auto r1 = precondition_advisor(caruso(Complex(2, 0)), ProbabilityVector::uniform(2), cfg);
    const auto r2 = precondition_advisor(caruso(Complex(2, 0)), ProbabilityVector::uniform(2), cfg);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (std::size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].name == r2.checks[i].name);
        CHECK(r1.checks[i].statistic == r2.checks[i].statistic);
        CHECK(r1.checks[i].passed == r2.checks[i].passed);
        CHECK(r1.checks[i].heuristic);
    }
}

TEST_CASE("caruso intersection checks against the known intersections", "[advisor]") {
    CarusoCheckConfig cfg;
    cfg.raster.full_depth = 48;
    cfg.raster.resolution = 256;

    const auto report = caruso_intersection_check(Complex(2, 0), cfg);
    // Designated points beta/2 = +-1 on both rasters, and unequal rasters.
    const auto* p1 = report.find("intersection_point_1+0i");
    REQUIRE(p1 != nullptr);
    CHECK(p1->passed);
    const auto* m1 = report.find("intersection_point_-1+0i");
    REQUIRE(m1 != nullptr);
    CHECK(m1->passed);
    const auto* uneq = report.find("rasters_unequal");
    REQUIRE(uneq != nullptr);
    CHECK(uneq->passed);

    CHECK_THROWS_AS(caruso_intersection_check(Complex(3, 0), cfg), std::invalid_argument);
}

TEST_CASE("beta scan smoke run", "[advisor]") {
    BetaScanConfig cfg;
    cfg.re0 = 1.0;
    cfg.re1 = 2.0;
    cfg.im0 = 0.0;
    cfg.im1 = 1.0;
    cfg.step = 0.5;
    cfg.chain.length = 20'000;
    cfg.raster_resolution = 128;
    const auto rows = beta_scan(cfg);
    REQUIRE(rows.size() == 9);
    // beta = 2 is known unequal.
    bool found_two = false;
    for (const auto& row : rows)
        if (std::abs(row.beta - Complex(2, 0)) < 1e-12) {
            found_two = true;
            CHECK_FALSE(row.equal_flag);
            CHECK(row.hausdorff > 0.0);
        }
    CHECK(found_two);

    // Deterministic across repeat runs (parallel workers included).
    const auto rows2 = beta_scan(cfg);
    REQUIRE(rows2.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].hausdorff == rows2[i].hausdorff);
        CHECK(rows[i].equal_flag == rows2[i].equal_flag);
        CHECK(rows[i].derived_seed == rows2[i].derived_seed);
    }

    BetaScanConfig bad = cfg;
    bad.re0 = -1.0;
    bad.im0 = -1.0;  // grid would contain 0
    bad.re1 = 1.0;
    bad.im1 = 1.0;
    CHECK_THROWS_AS(beta_scan(bad), std::invalid_argument);
}

TEST_CASE("beta scan rows are symmetric under beta -> -beta", "[advisor]") {
    BetaScanConfig cfg;
    cfg.re0 = -1.5;
    cfg.re1 = 1.5;
    cfg.im0 = -1.5;
    cfg.im1 = 1.5;
    cfg.step = 1.0;  // grid {-1.5, -0.5, 0.5, 1.5}^2, no zero
    cfg.chain.length = 10'000;
    cfg.raster_resolution = 128;
    const auto rows = beta_scan(cfg);
    REQUIRE(rows.size() == 16);
    for (const auto& row : rows) {
        bool found = false;
        for (const auto& other : rows) {
            if (std::abs(other.beta + row.beta) > 1e-12) continue;
            found = true;
            CHECK(other.hausdorff == row.hausdorff);
            CHECK(other.equal_flag == row.equal_flag);
            CHECK(other.derived_seed == row.derived_seed);
        }
        CHECK(found);
    }
}
