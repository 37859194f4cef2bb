#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mobjul/image.hpp"
#include "mobjul/nearest.hpp"
#include "mobjul/raster.hpp"
#include "test_support.hpp"

using namespace mobjul;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("binning basics", "[raster]") {
    RenderConfig rc;
    rc.resolution = 16;
    RasterSet raster(rc);
    raster.add(SpherePoint(0, 0), 1.0);
    CHECK(raster.occupied_count() == 1);

    // Sub-pixel coincidence: two nearby points land in the same cell.
    RenderConfig hi;
    hi.resolution = 1024;
    hi.mode = ChartMode::window;
    hi.x0 = -1;
    hi.x1 = 1;
    hi.y0 = -1;
    hi.y1 = 1;
    RasterSet fine(hi);
    fine.add(SpherePoint(0, 0), 0.5);
    fine.add(SpherePoint(1e-9, 0), 0.5);
    CHECK(fine.occupied_count() == 1);

    // Single point in a tiny window occupies exactly one cell.
    RenderConfig tiny;
    tiny.resolution = 16;
    tiny.mode = ChartMode::window;
    tiny.x0 = -1;
    tiny.x1 = 1;
    tiny.y0 = -1;
    tiny.y1 = 1;
    RasterSet t(tiny);
    t.add(SpherePoint(0, 0), 1.0);
    CHECK(t.occupied_count() == 1);
}

TEST_CASE("dual charts conserve mass and cover the sphere", "[raster]") {
    SplitMix64 rng(4);
    RenderConfig rc;
    rc.resolution = 64;
    RasterSet raster(rc);
    double mass = 0.0;
    for (int i = 0; i < 5'000; ++i) {
        const auto p = testsupport::random_point(rng);
        raster.add(p, 1.0);
        mass += 1.0;
    }
    raster.add(SpherePoint::infinity(), 1.0);
    mass += 1.0;
    CHECK(std::abs(raster.total_weight() - mass) < 1e-9 * mass);
    CHECK(raster.clipped_weight() == 0.0);
}

TEST_CASE("window mode clips outside points", "[raster]") {
    RenderConfig rc;
    rc.resolution = 32;
    rc.mode = ChartMode::window;
    rc.x0 = 0;
    rc.x1 = 1;
    rc.y0 = 0;
    rc.y1 = 1;
    RasterSet raster(rc);
    raster.add(SpherePoint(0.5, 0.5), 1.0);
    raster.add(SpherePoint(2, 2), 1.0);
    raster.add(SpherePoint::infinity(), 1.0);
    CHECK(raster.total_weight() == 1.0);
    CHECK(raster.clipped_weight() == 2.0);
}

TEST_CASE("occupied centers are within a cell diameter of their input", "[raster]") {
    SplitMix64 rng(21);
    RenderConfig rc;
    rc.resolution = 256;
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = testsupport::random_point(rng);
        RasterSet raster(rc);
        raster.add(p, 1.0);
        const auto centers = raster.occupied_centers();
        REQUIRE(centers.size() == 1);
        CHECK(chordal_distance(p, centers[0]) <= raster.cell_diameter());
    }
}

TEST_CASE("infinity lands in the second chart's origin cell", "[raster]") {
    RenderConfig rc;
    rc.resolution = 64;
    RasterSet raster(rc);
    raster.add(SpherePoint::infinity(), 1.0);
    const auto centers = raster.occupied_centers();
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].is_infinity());
}

TEST_CASE("rasterize rejects empty input", "[raster]") {
    RenderConfig rc;
    CHECK_THROWS_AS(rasterize(std::vector<SpherePoint>{}, rc), std::invalid_argument);
}

TEST_CASE("nearest neighbor index matches brute force", "[nearest]") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SpherePoint> pts;
        const std::size_t n = 2 + rng.next_u64() % 300;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(testsupport::random_point(rng));
        const PointSetIndex index(pts);
        for (int q = 0; q < 50; ++q) {
            const auto query = testsupport::random_point(rng);
            CHECK_THAT(index.distance(query),
                       Catch::Matchers::WithinAbs(distance_to_set(query, pts), 1e-12));
        }
    }
}

TEST_CASE("image writing is deterministic", "[image]") {
    const auto dir = std::filesystem::temp_directory_path() / "mobjul_image_test";
    std::filesystem::create_directories(dir);

    RenderConfig rc;
    rc.resolution = 32;
    RasterSet raster(rc);
    raster.add(SpherePoint(0.25, 0.25), 0.7);
    raster.add(SpherePoint::infinity(), 0.3);

    const auto p1 = (dir / "a.pgm").string();
    const auto p2 = (dir / "b.pgm").string();
    write_image(raster, p1, "determinism check");
    write_image(raster, p2, "determinism check");
    const auto bytes1 = slurp(p1);
    CHECK(bytes1 == slurp(p2));

    // P5 header, 64x32, and exactly two foreground pixels in binary mode.
    CHECK(bytes1.substr(0, 3) == "P5\n");
    std::size_t foreground = 0;
    const auto header_end = bytes1.find("255\n") + 4;
    for (std::size_t i = header_end; i < bytes1.size(); ++i)
        foreground += static_cast<unsigned char>(bytes1[i]) == 255;
    CHECK(foreground == 2);

    // Empty raster: all-background image.
    RasterSet empty(rc);
    const auto p3 = (dir / "c.pgm").string();
    write_image(empty, p3, "");
    const auto bytes3 = slurp(p3);
    const auto body = bytes3.substr(bytes3.find("255\n") + 4);
    for (char c : body) CHECK(c == 0);

    std::filesystem::remove_all(dir);
}

TEST_CASE("log-density coloring is monotone in weight", "[image]") {
    const auto dir = std::filesystem::temp_directory_path() / "mobjul_image_logd";
    std::filesystem::create_directories(dir);
    RenderConfig rc;
    rc.resolution = 16;
    rc.mode = ChartMode::window;
    rc.x0 = -1;
    rc.x1 = 1;
    rc.y0 = -1;
    rc.y1 = 1;
    rc.coloring = Coloring::log_density;
    RasterSet raster(rc);
    raster.add(SpherePoint(-0.9, -0.9), 0.001);
    raster.add(SpherePoint(0.0, 0.0), 0.1);
    raster.add(SpherePoint(0.9, 0.9), 0.899);
    const auto path = (dir / "d.pgm").string();
    write_image(raster, path, "");
    const auto bytes = slurp(path);
    const auto body = bytes.substr(bytes.find("255\n") + 4);
    std::vector<unsigned char> nonzero;
    for (char c : body)
        if (c != 0) nonzero.push_back(static_cast<unsigned char>(c));
    // Rows scan top-down, so the heaviest cell (top right) comes first.
    REQUIRE(nonzero.size() == 3);
    CHECK(nonzero[0] == 255);
    CHECK(nonzero[0] > nonzero[1]);
    CHECK(nonzero[1] > nonzero[2]);
    std::filesystem::remove_all(dir);
}
