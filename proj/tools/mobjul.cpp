// Command-line surface for the backward-iteration Julia set toolkit: the two
// drawing methods, fixed-point clouds, cross-validation reports, the
// precondition advisor, and the Caruso-family explorers.

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mobjul/pipeline.hpp"

namespace {

using namespace mobjul;

std::string default_out_dir() {
    if (const char* env = std::getenv("MOBJUL_OUT")) return env;
    return "out";
}

SpherePoint parse_point(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return SpherePoint::infinity();
    return SpherePoint(parse_complex(text));
}

SpherePoint pick_seed_point(const ResolvedSemigroup& sg, const std::string& flag) {
    if (!flag.empty()) return parse_point(flag);
    return detail::default_seed_point(sg.def.generators);
}

RenderConfig make_render(std::size_t resolution, const std::vector<double>& window,
                         const std::string& coloring, double gamma) {
    RenderConfig rc;
    rc.resolution = resolution;
    if (!window.empty()) {
        rc.mode = ChartMode::window;
        rc.x0 = window[0];
        rc.x1 = window[1];
        rc.y0 = window[2];
        rc.y1 = window[3];
    }
    if (coloring == "log")
        rc.coloring = Coloring::log_density;
    else if (coloring == "binary")
        rc.coloring = Coloring::binary;
    else
        throw std::invalid_argument("coloring must be 'binary' or 'log'");
    rc.gamma = gamma;
    rc.validate();
    return rc;
}

void print_artifacts(const PipelineArtifacts& artifacts) {
    std::cout << artifacts.summary << "\n";
    for (const auto& f : artifacts.files) std::cout << "wrote " << f << "\n";
}

JuliaRasterConfig make_raster_source(const std::string& method, std::size_t depth,
                                     std::size_t steps, std::size_t resolution,
                                     std::uint64_t seed) {
    JuliaRasterConfig cfg;
    if (method == "full")
        cfg.method = JuliaRasterConfig::Method::full_pullback;
    else if (method == "random")
        cfg.method = JuliaRasterConfig::Method::random_chain;
    else
        throw std::invalid_argument("method must be 'full' or 'random'");
    cfg.full_depth = depth;
    cfg.chain = {steps, 100, seed, 1};
    cfg.resolution = resolution;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Julia sets of Moebius semigroups via backward iteration"};
    app.require_subcommand(1);

    std::string semigroup_flag, out_dir = default_out_dir(), seed_flag;
    std::string full_coloring = "log", random_coloring = "binary", fps_coloring = "binary";
    std::vector<double> window;
    std::size_t resolution = 1024;
    double gamma = 2.2;
    std::uint64_t rng_seed = 1;

    const auto add_semigroup = [&](CLI::App* cmd) {
        cmd->add_option("--semigroup", semigroup_flag,
                        "named example (caruso:<beta>, dilation_pair, rotation:<theta>, "
                        "mixed_exceptional, disk_parabolic, disk_extension:<a>) or a "
                        "definition file path")
            ->required();
    };
    const auto add_render = [&](CLI::App* cmd, std::string& coloring_var) {
        cmd->add_option("--resolution", resolution, "raster resolution (default 1024)");
        cmd->add_option("--window", window, "x0 x1 y0 y1 close-up instead of the dual charts")
            ->expected(4);
        cmd->add_option("--coloring", coloring_var,
                        "binary | log (default " + coloring_var + ")");
        cmd->add_option("--gamma", gamma, "gamma for log-density coloring (default 2.2)");
    };
    const auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory (default $MOBJUL_OUT or ./out)");
    };

    // classify ---------------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "per-generator class, tr^2, fixed points");
    add_semigroup(cmd_classify);
    cmd_classify->callback([&] {
        std::cout << classify_table(resolve_semigroup(semigroup_flag));
    });

    // full -------------------------------------------------------------------
    auto* cmd_full = app.add_subcommand("full", "full backward iteration (all k^n words)");
    add_semigroup(cmd_full);
    add_render(cmd_full, full_coloring);
    add_out(cmd_full);
    std::size_t depth = 12;
    double coalesce_tol = 0.0, weight_floor = 0.0;
    cmd_full->add_option("--seed-point", seed_flag, "seed point a (complex or 'inf')");
    cmd_full->add_option("--depth", depth, "word depth n (default 12)");
    cmd_full->add_option("--coalesce", coalesce_tol, "merge atoms within this chordal tolerance");
    cmd_full->add_option("--weight-floor", weight_floor, "drop atoms below this weight");
    cmd_full->callback([&] {
        const auto sg = resolve_semigroup(semigroup_flag);
        FullPipelineConfig cfg;
        cfg.seed_point = pick_seed_point(sg, seed_flag);
        cfg.depth = depth;
        cfg.coalesce_tol = coalesce_tol;
        cfg.weight_floor = weight_floor;
        cfg.render = make_render(resolution, window, full_coloring, gamma);
        cfg.out_dir = out_dir;
        print_artifacts(run_full_pipeline(sg, cfg));
    });

    // random -----------------------------------------------------------------
    auto* cmd_random = app.add_subcommand("random", "random backward iteration (chaos game)");
    add_semigroup(cmd_random);
    add_render(cmd_random, random_coloring);
    add_out(cmd_random);
    std::size_t steps = 100'000, burn_in = 100;
    cmd_random->add_option("--seed-point", seed_flag, "seed point a (complex or 'inf')");
    cmd_random->add_option("--steps", steps, "chain length (default 100000)");
    cmd_random->add_option("--burn-in", burn_in, "points discarded before plotting (default 100)");
    cmd_random->add_option("--rng-seed", rng_seed, "master seed (default 1)");
    cmd_random->callback([&] {
        const auto sg = resolve_semigroup(semigroup_flag);
        RandomPipelineConfig cfg;
        cfg.seed_point = pick_seed_point(sg, seed_flag);
        cfg.chain = {steps, burn_in, rng_seed, 1};
        cfg.render = make_render(resolution, window, random_coloring, gamma);
        cfg.out_dir = out_dir;
        print_artifacts(run_random_pipeline(sg, cfg));
    });

    // fixedpoints --------------------------------------------------------------
    auto* cmd_fps = app.add_subcommand("fixedpoints", "fixed points of all words up to a length");
    add_semigroup(cmd_fps);
    add_render(cmd_fps, fps_coloring);
    add_out(cmd_fps);
    std::size_t max_word_len = 8;
    std::string kind = "repelling";
    cmd_fps->add_option("--max-word-len", max_word_len, "maximum word length (default 8)");
    cmd_fps->add_option("--kind", kind, "repelling | attracting");
    cmd_fps->callback([&] {
        const auto sg = resolve_semigroup(semigroup_flag);
        FixedPointsPipelineConfig cfg;
        cfg.max_word_len = max_word_len;
        if (kind == "repelling")
            cfg.kind = FixedPointKind::repelling;
        else if (kind == "attracting")
            cfg.kind = FixedPointKind::attracting;
        else
            throw std::invalid_argument("kind must be repelling or attracting");
        cfg.render = make_render(resolution, window, fps_coloring, gamma);
        cfg.out_dir = out_dir;
        print_artifacts(run_fixedpoints_pipeline(sg, cfg));
    });

    // compare ------------------------------------------------------------------
    auto* cmd_compare = app.add_subcommand("compare", "cross-validate full vs random vs clouds");
    add_semigroup(cmd_compare);
    add_out(cmd_compare);
    std::size_t cmp_depth = 12, cmp_steps = 200'000, cmp_words = 6, cmp_res = 512;
    cmd_compare->add_option("--seed-point", seed_flag, "seed point a (complex or 'inf')");
    cmd_compare->add_option("--depth", cmp_depth, "full-method depth (default 12)");
    cmd_compare->add_option("--steps", cmp_steps, "chain length (default 200000)");
    cmd_compare->add_option("--max-word-len", cmp_words, "cloud word length (default 6)");
    cmd_compare->add_option("--resolution", cmp_res, "comparison raster resolution (default 512)");
    cmd_compare->add_option("--rng-seed", rng_seed, "master seed (default 1)");
    cmd_compare->callback([&] {
        const auto sg = resolve_semigroup(semigroup_flag);
        ComparePipelineConfig cfg;
        cfg.seed_point = pick_seed_point(sg, seed_flag);
        cfg.depth = cmp_depth;
        cfg.chain = {cmp_steps, 100, rng_seed, 1};
        cfg.max_word_len = cmp_words;
        cfg.raster_resolution = cmp_res;
        cfg.out_dir = out_dir;
        const auto artifacts = run_compare_pipeline(sg, cfg);
        std::cout << artifacts.summary;
        for (std::size_t i = 0; i + 1 < artifacts.files.size() + 1; ++i)
            std::cout << "wrote " << artifacts.files[i] << "\n";
    });

    // advisor ------------------------------------------------------------------
    auto* cmd_advisor = app.add_subcommand("advisor", "heuristic checks of the J_ker lemmas");
    add_semigroup(cmd_advisor);
    add_out(cmd_advisor);
    std::size_t adv_steps = 200'000, adv_res = 512, adv_depth = 160;
    std::string adv_method = "full";
    cmd_advisor->add_option("--method", adv_method, "raster source: full | random (default full)");
    cmd_advisor->add_option("--depth", adv_depth, "full-method raster depth (default 160)");
    cmd_advisor->add_option("--steps", adv_steps, "random-method chain length (default 200000)");
    cmd_advisor->add_option("--resolution", adv_res, "raster resolution (default 512)");
    cmd_advisor->add_option("--rng-seed", rng_seed, "master seed (default 1)");
    cmd_advisor->callback([&] {
        const auto sg = resolve_semigroup(semigroup_flag);
        AdvisorConfig cfg;
        cfg.raster = make_raster_source(adv_method, adv_depth, adv_steps, adv_res, rng_seed);
        const auto artifacts = run_advisor_pipeline(sg, cfg, out_dir);
        std::cout << artifacts.summary;
        for (const auto& f : artifacts.files) std::cout << "wrote " << f << "\n";
    });

    // betascan -----------------------------------------------------------------
    auto* cmd_scan = app.add_subcommand("betascan", "scan beta for J(S_beta) = J(S_beta')");
    add_out(cmd_scan);
    std::vector<double> rect{0.25, 2.0, 0.0, 2.0};
    double scan_step = 0.25;
    std::size_t scan_steps = 50'000, scan_res = 256;
    cmd_scan->add_option("--rect", rect, "re0 re1 im0 im1 (must exclude beta = 0)")->expected(4);
    cmd_scan->add_option("--step", scan_step, "grid step (default 0.25)");
    cmd_scan->add_option("--steps", scan_steps, "chain length per beta (default 50000)");
    cmd_scan->add_option("--resolution", scan_res, "raster resolution (default 256)");
    cmd_scan->add_option("--rng-seed", rng_seed, "master seed (default 1)");
    cmd_scan->callback([&] {
        BetaScanConfig cfg;
        cfg.re0 = rect[0];
        cfg.re1 = rect[1];
        cfg.im0 = rect[2];
        cfg.im1 = rect[3];
        cfg.step = scan_step;
        cfg.chain = {scan_steps, 100, 1, 1};
        cfg.raster_resolution = scan_res;
        cfg.master_seed = rng_seed;
        const auto artifacts = run_betascan_pipeline(cfg, out_dir);
        print_artifacts(artifacts);
    });

    // caruso -------------------------------------------------------------------
    auto* cmd_caruso = app.add_subcommand("caruso", "S_beta and S_beta' with intersection check");
    add_out(cmd_caruso);
    std::string beta_flag, car_method = "full";
    std::size_t car_steps = 1'000'000, car_res = 512, car_depth = 160;
    cmd_caruso->add_option("--beta", beta_flag, "one of +-1+-1i, +-2, +-2i")->required();
    cmd_caruso->add_option("--method", car_method, "raster source: full | random (default full)");
    cmd_caruso->add_option("--depth", car_depth, "full-method raster depth (default 160)");
    cmd_caruso->add_option("--steps", car_steps, "random-method chain length (default 1000000)");
    cmd_caruso->add_option("--resolution", car_res, "raster resolution (default 512)");
    cmd_caruso->add_option("--rng-seed", rng_seed, "master seed (default 1)");
    cmd_caruso->callback([&] {
        CarusoCheckConfig cfg;
        cfg.raster = make_raster_source(car_method, car_depth, car_steps, car_res, rng_seed);
        const auto artifacts = run_caruso_pipeline(parse_complex(beta_flag), cfg, out_dir);
        std::cout << artifacts.summary;
        for (const auto& f : artifacts.files) std::cout << "wrote " << f << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
