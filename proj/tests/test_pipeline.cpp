#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mobjul/pipeline.hpp"

using namespace mobjul;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("complex parsing", "[pipeline]") {
    CHECK(parse_complex("2") == Complex(2, 0));
    CHECK(parse_complex("-2") == Complex(-2, 0));
    CHECK(parse_complex("1+1i") == Complex(1, 1));
    CHECK(parse_complex("1-i") == Complex(1, -1));
    CHECK(parse_complex("2i") == Complex(0, 2));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("0.5-0.25i") == Complex(0.5, -0.25));
    CHECK(parse_complex("1e-3+2e-3i") == Complex(1e-3, 2e-3));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
}

TEST_CASE("semigroup resolution", "[pipeline]") {
    CHECK(resolve_semigroup("caruso:2").def.generators.size() == 2);
    CHECK(resolve_semigroup("dilation_pair").def.generators.size() == 2);
    CHECK(resolve_semigroup("rotation:0.2").def.generators.size() == 1);
    CHECK(resolve_semigroup("mixed_exceptional").def.generators.size() == 2);
    CHECK(resolve_semigroup("disk_parabolic").def.generators.size() == 2);
    CHECK(resolve_semigroup("disk_extension:1.5").def.generators.size() == 3);
    CHECK_THROWS_AS(resolve_semigroup("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(resolve_semigroup("caruso:0"), std::invalid_argument);

    TempDir dir("mobjul_resolve_test");
    const auto file = (dir.path / "def.txt").string();
    {
        std::ofstream out(file);
        out << "k 1\ngenerator f 2 0 0 0 0 0 1 0\n";
    }
    const auto resolved = resolve_semigroup(file);
    CHECK(resolved.def.generators.size() == 1);
    CHECK(resolved.def.weights[0] == 1.0);
}

TEST_CASE("classify table lists the generator classes", "[pipeline]") {
    const auto table = classify_table(resolve_semigroup("dilation_pair"));
    CHECK(table.find("hyperbolic") != std::string::npos);
    CHECK(table.find("tr2=4.5") != std::string::npos);
    const auto caruso_table = classify_table(resolve_semigroup("caruso:2"));
    CHECK(caruso_table.find("strictly_loxodromic") != std::string::npos);
}

TEST_CASE("full pipeline writes deterministic artifacts", "[pipeline]") {
    TempDir dir("mobjul_full_pipeline");
    const auto sg = resolve_semigroup("caruso:2");
    FullPipelineConfig cfg;
    cfg.seed_point = SpherePoint(0, 0);
    cfg.depth = 8;
    cfg.render.resolution = 128;
    cfg.out_dir = (dir.path / "run1").string();
    const auto a1 = run_full_pipeline(sg, cfg);
    cfg.out_dir = (dir.path / "run2").string();
    const auto a2 = run_full_pipeline(sg, cfg);
    REQUIRE(a1.files.size() == a2.files.size());
    for (std::size_t i = 0; i < a1.files.size(); ++i)
        CHECK(slurp(a1.files[i]) == slurp(a2.files[i]));

    // Atom CSV contains the lexicographically first word of depth 8.
    const auto csv = slurp(a1.files[1]);
    CHECK(csv.find("word,re,im,is_infinity,weight") != std::string::npos);
    CHECK(csv.find("1.1.1.1.1.1.1.1,") != std::string::npos);
}

TEST_CASE("binary rasters of the full measure are b-independent", "[pipeline]") {
    TempDir dir("mobjul_full_b_indep");
    const auto g = caruso(Complex(2, 0));
    FullRunConfig fc;
    fc.depth = 10;
    fc.seed = SpherePoint(0, 0);
    RenderConfig rc;
    rc.resolution = 256;
    rc.coloring = Coloring::binary;

    const auto m1 = full_backward_measure(g, ProbabilityVector::uniform(2), fc);
    const auto m2 = full_backward_measure(g, ProbabilityVector({0.3, 0.7}), fc);
    const auto p1 = (dir.path / "u.pgm").string();
    const auto p2 = (dir.path / "w.pgm").string();
    write_image(rasterize(m1.measure, rc), p1, "b-independence");
    write_image(rasterize(m2.measure, rc), p2, "b-independence");
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("random pipeline echoes seeds and reproduces orbits", "[pipeline]") {
    TempDir dir("mobjul_random_pipeline");
    const auto sg = resolve_semigroup("caruso:1+1i");
    RandomPipelineConfig cfg;
    cfg.seed_point = SpherePoint(0, 0);
    cfg.chain = {5'000, 100, 99, 1};
    cfg.render.resolution = 128;
    cfg.out_dir = (dir.path / "r1").string();
    const auto a1 = run_random_pipeline(sg, cfg);
    cfg.out_dir = (dir.path / "r2").string();
    const auto a2 = run_random_pipeline(sg, cfg);
    for (std::size_t i = 0; i < a1.files.size(); ++i)
        CHECK(slurp(a1.files[i]) == slurp(a2.files[i]));
    const auto orbit_csv = slurp(a1.files[1]);
    CHECK(orbit_csv.find("master_seed=99") != std::string::npos);
    CHECK(orbit_csv.find("step,index,re,im,is_infinity") != std::string::npos);
}

TEST_CASE("compare pipeline cross-validates caruso(2)", "[pipeline]") {
    TempDir dir("mobjul_compare_pipeline");
    const auto sg = resolve_semigroup("caruso:2");
    ComparePipelineConfig cfg;
    cfg.seed_point = SpherePoint(0, 0);
    cfg.depth = 10;
    cfg.chain = {50'000, 100, 7, 1};
    cfg.max_word_len = 6;
    cfg.raster_resolution = 256;
    cfg.out_dir = (dir.path / "cmp").string();
    const auto report = run_compare(sg, cfg);
    for (const auto& c : report.checks) {
        INFO(c.name << " statistic=" << c.statistic << " tolerance=" << c.tolerance);
        CHECK(c.passed);
    }
    // The full-vs-random discrepancy is never exactly zero here.
    const auto* disc = report.find("weak_star_full_vs_random");
    REQUIRE(disc != nullptr);
    CHECK(disc->statistic > 0.0);

    const auto artifacts = run_compare_pipeline(sg, cfg);
    CHECK(slurp(artifacts.files[0]).find("report: full vs random") != std::string::npos);
    CHECK(slurp(artifacts.files[1]).find("name,statistic,tolerance") != std::string::npos);
}

TEST_CASE("compare on the degenerate pair reports equal measures honestly", "[pipeline]") {
    // dilation_pair from a = 0: both pipelines produce the dirac at 0; the
    // aliasing guard must verify the zero discrepancy via the supports.
    const auto sg = resolve_semigroup("dilation_pair");
    ComparePipelineConfig cfg;
    cfg.seed_point = SpherePoint(0, 0);
    cfg.depth = 12;  // 4096 atoms, more than the chain has steps
    cfg.chain = {2'000, 100, 3, 1};
    cfg.raster_resolution = 128;
    const auto report = run_compare(sg, cfg);
    const auto* guard = report.find("aliasing_guard");
    REQUIRE(guard != nullptr);
    CHECK(guard->passed);
}
