#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mobjul/advisor.hpp"
#include "mobjul/csv.hpp"
#include "mobjul/diagnostics.hpp"
#include "mobjul/errors.hpp"
#include "mobjul/full_backward.hpp"
#include "mobjul/image.hpp"
#include "mobjul/random_backward.hpp"
#include "mobjul/raster.hpp"
#include "mobjul/report.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

/// Parses "2", "-1.5", "1+1i", "1-i", "2i", "i", "-i".
inline Complex parse_complex(const std::string& text) {
    const std::string s = [&] {
        std::string t;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        return t;
    }();
    if (s.empty()) throw std::invalid_argument("parse_complex: empty string");

    const auto parse_part = [](const std::string& part, bool imaginary) -> double {
        if (!imaginary) return std::stod(part);
        std::string core = part.substr(0, part.size() - 1);  // strip trailing 'i'
        if (core.empty() || core == "+") return 1.0;
        if (core == "-") return -1.0;
        return std::stod(core);
    };

    try {
        // Split at the last +/- that is not a leading sign or an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;) {
            if (s[i] != '+' && s[i] != '-') continue;
            const char prev = s[i - 1];
            if (prev == 'e' || prev == 'E') continue;
            split = i;
            break;
        }
        const bool has_i = s.back() == 'i' || s.back() == 'I';
        if (split == std::string::npos) {
            if (has_i) return {0.0, parse_part(s, true)};
            return {std::stod(s), 0.0};
        }
        if (!has_i) throw std::invalid_argument("two real parts");
        return {std::stod(s.substr(0, split)), parse_part(s.substr(split), true)};
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_complex: cannot parse '" + text + "'");
    }
}

/// Resolves a semigroup source: a named example ("caruso:2", "caruso:1+1i",
/// "dilation_pair", "rotation:0.3333", "mixed_exceptional", "disk_parabolic",
/// "disk_extension:1.5") or a path to a definition file.
struct ResolvedSemigroup {
    SemigroupDefinition def;
    std::string description;
};

inline ResolvedSemigroup resolve_semigroup(const std::string& source) {
    const auto with_uniform = [&](GeneratorSet g, const std::string& desc) -> ResolvedSemigroup {
        auto b = ProbabilityVector::uniform(g.size());
        return {{std::move(g), std::move(b)}, desc};
    };
    const auto colon = source.find(':');
    const std::string head = source.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : source.substr(colon + 1);
    if (head == "caruso") {
        if (arg.empty()) throw std::invalid_argument("caruso needs a beta, e.g. caruso:1+1i");
        return with_uniform(caruso(parse_complex(arg)), "caruso beta=" + arg);
    }
    if (head == "rotation") {
        if (arg.empty()) throw std::invalid_argument("rotation needs an angle parameter");
        return with_uniform(rotation(std::stod(arg)), "rotation theta=" + arg);
    }
    if (head == "dilation_pair") return with_uniform(dilation_pair(), "dilation_pair");
    if (head == "mixed_exceptional") return with_uniform(mixed_exceptional(), "mixed_exceptional");
    if (head == "disk_parabolic") return with_uniform(disk_parabolic_pair(), "disk_parabolic");
    if (head == "disk_extension") {
        if (arg.empty()) throw std::invalid_argument("disk_extension needs a factor with |a| > 1");
        return with_uniform(disk_extension(disk_parabolic_pair(), parse_complex(arg)),
                            "disk_extension a=" + arg);
    }
    if (std::filesystem::exists(source))
        return {load_semigroup_definition(source), "file " + source};
    throw std::invalid_argument("unknown semigroup source '" + source + "'");
}

// ---------------------------------------------------------------------------
// RunSpec echo
// ---------------------------------------------------------------------------

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory " + dir);
    return dir;
}

/// Every pipeline echoes its resolved configuration next to its artifacts,
/// so each output directory self-describes how it was produced.
inline void write_runspec(const std::filesystem::path& dir, const std::string& command,
                          const KeyValues& kv) {
    auto out = detail::open_artifact((dir / "runspec.txt").string());
    out << "command " << command << "\n";
    for (const auto& [k, v] : kv) out << k << " " << v << "\n";
    if (!out) throw io_error("failed writing runspec.txt");
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

/// Per-generator classification table (label, class, tr^2, fixed points).
inline std::string classify_table(const ResolvedSemigroup& sg) {
    std::ostringstream out;
    char buf[256];
    const auto& g = sg.def.generators;
    out << "semigroup: " << sg.description << " (k=" << g.size() << ")\n";
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto& m = g.map(j);
        const auto cls = classify(m);
        const auto t = trace_squared_invariant(m);
        std::snprintf(buf, sizeof buf, "%-8s %-20s tr2=%.12g%+.12gi", g.label(j).c_str(),
                      to_string(cls), t.real(), t.imag());
        out << buf;
        if (cls != MapClass::identity) {
            out << "  fixed points:";
            for (const auto& fp : fixed_points(m).points) {
                out << " " << detail::point_to_string(fp.point) << " (" << to_string(fp.kind);
                if (fp.multiplier) {
                    std::snprintf(buf, sizeof buf, ", |m'|=%.6g", std::abs(*fp.multiplier));
                    out << buf;
                }
                out << ")";
            }
        }
        out << "\n";
    }
    return out.str();
}

struct FullPipelineConfig {
    SpherePoint seed_point;
    std::size_t depth = 12;
    double coalesce_tol = 0.0;
    double weight_floor = 0.0;
    RenderConfig render;
    std::string out_dir = "out";
};

struct PipelineArtifacts {
    std::vector<std::string> files;
    std::string summary;
};

inline PipelineArtifacts run_full_pipeline(const ResolvedSemigroup& sg,
                                           const FullPipelineConfig& cfg) {
    const auto dir = prepare_output_dir(cfg.out_dir);
    FullRunConfig fc;
    fc.depth = cfg.depth;
    fc.seed = cfg.seed_point;
    fc.coalesce_tol = cfg.coalesce_tol;
    fc.weight_floor = cfg.weight_floor;
    const auto result = full_backward_measure(sg.def.generators, sg.def.weights, fc);

    const auto raster = rasterize(result.measure, cfg.render);

    const std::string provenance = "full method, " + sg.description + ", depth " +
                                   std::to_string(cfg.depth) + ", seed point " +
                                   detail::point_to_string(cfg.seed_point);
    const std::string image_path = (dir / "full.pgm").string();
    const std::string csv_path = (dir / "atoms.csv").string();
    write_image(raster, image_path, provenance);
    write_atoms_csv(csv_path, result.measure, sg.def.generators.size(), cfg.depth,
                    !result.stats.approximate && cfg.coalesce_tol == 0.0 && cfg.weight_floor == 0.0,
                    provenance);
    write_runspec(dir, "full",
                  {{"semigroup", sg.description},
                   {"seed_point", detail::point_to_string(cfg.seed_point)},
                   {"depth", std::to_string(cfg.depth)},
                   {"coalesce_tol", detail::format_double(cfg.coalesce_tol)},
                   {"weight_floor", detail::format_double(cfg.weight_floor)},
                   {"atoms", std::to_string(result.stats.atom_count)},
                   {"merged_atoms", std::to_string(result.stats.merged_atoms)},
                   {"dropped_mass", detail::format_double(result.stats.dropped_mass)},
                   {"resolution", std::to_string(cfg.render.resolution)}});

    std::ostringstream sum;
    sum << "full method: " << result.stats.atom_count << " atoms at depth " << cfg.depth;
    if (result.stats.approximate)
        sum << " (approximate: " << result.stats.merged_atoms << " merged, dropped mass "
            << result.stats.dropped_mass << ")";
    return {{image_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

struct RandomPipelineConfig {
    SpherePoint seed_point;
    ChainConfig chain{100'000, 100, 1, 1};
    RenderConfig render;
    std::string out_dir = "out";
};

inline PipelineArtifacts run_random_pipeline(const ResolvedSemigroup& sg,
                                             const RandomPipelineConfig& cfg) {
    const auto dir = prepare_output_dir(cfg.out_dir);
    const auto orbit =
        random_backward_orbit(sg.def.generators, cfg.seed_point, sg.def.weights, cfg.chain);
    const auto mu = empirical_measure(orbit, cfg.chain.burn_in);
    const auto raster = rasterize(mu, cfg.render);

    const std::string provenance = "random method, " + sg.description + ", " +
                                   std::to_string(cfg.chain.length) + " steps, seed point " +
                                   detail::point_to_string(cfg.seed_point) + ", master_seed=" +
                                   std::to_string(cfg.chain.rng_seed);
    const std::string image_path = (dir / "random.pgm").string();
    const std::string csv_path = (dir / "orbit.csv").string();
    write_image(raster, image_path, provenance);
    write_orbit_csv(csv_path, orbit, "random method, " + sg.description);
    write_runspec(dir, "random",
                  {{"semigroup", sg.description},
                   {"seed_point", detail::point_to_string(cfg.seed_point)},
                   {"steps", std::to_string(cfg.chain.length)},
                   {"burn_in", std::to_string(cfg.chain.burn_in)},
                   {"master_seed", std::to_string(cfg.chain.rng_seed)},
                   {"resolution", std::to_string(cfg.render.resolution)}});

    std::ostringstream sum;
    sum << "random method: " << cfg.chain.length << " steps, burn-in " << cfg.chain.burn_in
        << ", master seed " << cfg.chain.rng_seed;
    return {{image_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

struct FixedPointsPipelineConfig {
    std::size_t max_word_len = 8;
    FixedPointKind kind = FixedPointKind::repelling;
    RenderConfig render;
    std::string out_dir = "out";
};

inline PipelineArtifacts run_fixedpoints_pipeline(const ResolvedSemigroup& sg,
                                                  const FixedPointsPipelineConfig& cfg) {
    const auto dir = prepare_output_dir(cfg.out_dir);
    const auto cloud = fixed_point_cloud(sg.def.generators, cfg.max_word_len, cfg.kind);
    const std::string provenance = "fixed-point cloud, " + sg.description + ", words <= " +
                                   std::to_string(cfg.max_word_len) + ", kind " +
                                   std::string(to_string(cfg.kind));
    const std::string image_path = (dir / "fixedpoints.pgm").string();
    const std::string csv_path = (dir / "fixedpoints.csv").string();
    if (cloud.points.empty()) {
        // Still record the empty outcome; an all-background image is valid.
        RasterSet empty_raster(cfg.render);
        write_image(empty_raster, image_path, provenance + " (empty)");
    } else {
        write_image(rasterize(cloud.points, cfg.render), image_path, provenance);
    }
    write_cloud_csv(csv_path, cloud, provenance);
    write_runspec(dir, "fixedpoints",
                  {{"semigroup", sg.description},
                   {"max_word_len", std::to_string(cfg.max_word_len)},
                   {"kind", to_string(cfg.kind)},
                   {"points", std::to_string(cloud.points.size())},
                   {"words_total", std::to_string(cloud.words_total)},
                   {"resolution", std::to_string(cfg.render.resolution)}});
    std::ostringstream sum;
    sum << "fixed-point cloud: " << cloud.points.size() << " points from " << cloud.words_total
        << " words (identity " << cloud.identity_words << ", parabolic " << cloud.parabolic_words
        << ", elliptic " << cloud.elliptic_words << ")";
    return {{image_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

struct ComparePipelineConfig {
    SpherePoint seed_point;
    std::size_t depth = 12;
    ChainConfig chain{200'000, 100, 1, 1};
    std::size_t max_word_len = 6;
    std::size_t raster_resolution = 512;
    std::string out_dir = "out";
};

/// Cross-validates the two drawing methods and the fixed-point cloud on one
/// semigroup: weak* discrepancy, raster coverage both ways, cloud distance,
/// orbit-decay medians, and the pullback-invariance residual.
inline ConvergenceReport run_compare(const ResolvedSemigroup& sg,
                                     const ComparePipelineConfig& cfg) {
    const auto& g = sg.def.generators;
    const auto& b = sg.def.weights;
    const auto family = TestFunctionFamily::default_family();

    FullRunConfig fc;
    fc.depth = cfg.depth;
    fc.seed = cfg.seed_point;
    const auto full = full_backward_measure(g, b, fc);
    FullRunConfig fc_prev = fc;
    fc_prev.depth = cfg.depth > 0 ? cfg.depth - 1 : 0;
    const auto full_prev = full_backward_measure(g, b, fc_prev);

    const auto orbit = random_backward_orbit(g, cfg.seed_point, b, cfg.chain);
    const auto emp = empirical_measure(orbit, cfg.chain.burn_in);

    RenderConfig rc;
    rc.resolution = cfg.raster_resolution;
    const auto full_raster = rasterize(full.measure, rc);
    const auto random_raster = rasterize(emp, rc);
    const double cd = full_raster.cell_diameter();

    ConvergenceReport report;
    report.title = "full vs random vs fixed points";
    report.metadata = {{"semigroup", sg.description},
                       {"seed_point", detail::point_to_string(cfg.seed_point)},
                       {"depth", std::to_string(cfg.depth)},
                       {"chain_length", std::to_string(cfg.chain.length)},
                       {"burn_in", std::to_string(cfg.chain.burn_in)},
                       {"master_seed", std::to_string(cfg.chain.rng_seed)},
                       {"raster_resolution", std::to_string(cfg.raster_resolution)},
                       {"cell_diameter", detail::format_double(cd)}};

    const auto sig_full = family.signature(full.measure);
    const auto sig_prev = family.signature(full_prev.measure);
    const auto sig_emp = family.signature(emp);
    const double disc = discrepancy_from_signatures(sig_full, sig_emp);
    const double depth_gap = discrepancy_from_signatures(sig_full, sig_prev);

    CheckResult c;
    c.name = "weak_star_full_vs_random";
    c.statistic = disc;
    c.tolerance = std::max(4.0 * depth_gap, 0.05);
    c.passed = disc <= c.tolerance;
    c.note = "tolerance 4x the depth-(n-1)/n discrepancy, floored";
    report.checks.push_back(c);

    // Aliasing guard: a zero discrepancy (up to the summation noise floor,
    // which scales with the atom counts) from a chain shorter than the atom
    // count must mean the supports genuinely coincide.
    const double noise_floor =
        2.3e-16 * static_cast<double>(full.measure.size() + emp.size());
    if (disc <= noise_floor && cfg.chain.length < full.measure.size()) {
        const double support_gap =
            hausdorff_distance(full.measure.support(), emp.support());
        CheckResult guard;
        guard.name = "aliasing_guard";
        guard.statistic = support_gap;
        guard.tolerance = 1e-9;
        guard.passed = support_gap < 1e-9;
        guard.note = "exact-zero discrepancy cross-checked on supports";
        report.checks.push_back(guard);
    }

    const double cover_full_by_random =
        directed_hausdorff(full_raster.occupied_centers(), PointSetIndex(random_raster.occupied_centers()));
    const double cover_random_by_full =
        directed_hausdorff(random_raster.occupied_centers(), PointSetIndex(full_raster.occupied_centers()));
    CheckResult cov;
    cov.name = "closure_coverage";
    cov.statistic = std::max(cover_full_by_random, cover_random_by_full);
    cov.tolerance = 3.0 * cd;
    cov.passed = cov.statistic <= cov.tolerance;
    cov.note = "each raster covered by the other within 3 cell diameters";
    cov.metadata = {{"full_covered_by_random", detail::format_double(cover_full_by_random)},
                    {"random_covered_by_full", detail::format_double(cover_random_by_full)}};
    report.checks.push_back(cov);

    const auto cloud = fixed_point_cloud(g, cfg.max_word_len, FixedPointKind::repelling);
    if (!cloud.points.empty()) {
        const PointSetIndex random_index(random_raster.occupied_centers());
        double worst = 0.0;
        for (const auto& p : cloud.points) {
            const double d = random_index.distance_at_most(p, worst);
            if (d > worst) worst = d;
        }
        CheckResult fps;
        fps.name = "repelling_cloud_on_random_raster";
        fps.statistic = worst;
        fps.tolerance = 3.0 * cd;
        fps.passed = worst <= fps.tolerance;
        fps.metadata = {{"cloud_points", std::to_string(cloud.points.size())}};
        report.checks.push_back(fps);
    }

    const auto decay = orbit_to_julia_distance(orbit, full_raster);
    CheckResult dec;
    dec.name = "orbit_distance_decay";
    dec.statistic = decay.tail_median;
    dec.tolerance = decay.head_median;
    dec.passed = decay.tail_median <= decay.head_median;
    dec.note = "tail median <= head median against the full raster";
    dec.metadata = {{"tail_max", detail::format_double(decay.tail_max)}};
    report.checks.push_back(dec);

    const double residual =
        discrepancy_from_signatures(family.signature(pullback_step(g, b, full.measure)), sig_full);
    CheckResult inv;
    inv.name = "invariance_residual";
    inv.statistic = residual;
    inv.tolerance = std::max(depth_gap, 1e-12);
    inv.passed = residual <= inv.tolerance;
    inv.note = "pullback residual <= depth-(n-1)/n discrepancy";
    report.checks.push_back(inv);

    const double back_inv = backward_invariance_check(g, random_raster);
    CheckResult bi;
    bi.name = "backward_invariance";
    bi.statistic = back_inv;
    bi.tolerance = 3.0 * cd;
    bi.passed = back_inv <= bi.tolerance;
    report.checks.push_back(bi);

    return report;
}

inline PipelineArtifacts run_compare_pipeline(const ResolvedSemigroup& sg,
                                              const ComparePipelineConfig& cfg) {
    const auto dir = prepare_output_dir(cfg.out_dir);
    const auto report = run_compare(sg, cfg);
    const std::string text_path = (dir / "compare.txt").string();
    const std::string csv_path = (dir / "compare.csv").string();
    write_report_files(text_path, csv_path, report);
    write_runspec(dir, "compare",
                  {{"semigroup", sg.description},
                   {"seed_point", detail::point_to_string(cfg.seed_point)},
                   {"depth", std::to_string(cfg.depth)},
                   {"chain_length", std::to_string(cfg.chain.length)},
                   {"master_seed", std::to_string(cfg.chain.rng_seed)}});
    std::ostringstream sum;
    report.write_text(sum);
    return {{text_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

inline PipelineArtifacts run_advisor_pipeline(const ResolvedSemigroup& sg,
                                              const AdvisorConfig& cfg,
                                              const std::string& out_dir) {
    const auto dir = prepare_output_dir(out_dir);
    const auto report = precondition_advisor(sg.def.generators, sg.def.weights, cfg);
    const std::string text_path = (dir / "advisor.txt").string();
    const std::string csv_path = (dir / "advisor.csv").string();
    write_report_files(text_path, csv_path, report);
    const bool chain = cfg.raster.method == JuliaRasterConfig::Method::random_chain;
    write_runspec(dir, "advisor",
                  {{"semigroup", sg.description},
                   {"raster_method", chain ? "random_chain" : "full_pullback"},
                   {"raster_budget", chain ? std::to_string(cfg.raster.chain.length) + " steps"
                                           : "depth " + std::to_string(cfg.raster.full_depth)},
                   {"master_seed", std::to_string(cfg.raster.chain.rng_seed)},
                   {"raster_resolution", std::to_string(cfg.raster.resolution)}});
    std::ostringstream sum;
    report.write_text(sum);
    return {{text_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

inline PipelineArtifacts run_betascan_pipeline(const BetaScanConfig& cfg,
                                               const std::string& out_dir) {
    const auto dir = prepare_output_dir(out_dir);
    const auto rows = beta_scan(cfg);
    const std::string csv_path = (dir / "betascan.csv").string();
    write_betascan_csv(csv_path, rows, cfg);
    write_runspec(dir, "betascan",
                  {{"rect", detail::format_double(cfg.re0) + " " + detail::format_double(cfg.re1) +
                                " " + detail::format_double(cfg.im0) + " " +
                                detail::format_double(cfg.im1)},
                   {"step", detail::format_double(cfg.step)},
                   {"chain_length", std::to_string(cfg.chain.length)},
                   {"raster_resolution", std::to_string(cfg.raster_resolution)},
                   {"master_seed", std::to_string(cfg.master_seed)}});
    std::size_t unequal = 0;
    for (const auto& r : rows) unequal += !r.equal_flag;
    std::ostringstream sum;
    sum << "beta scan: " << rows.size() << " grid points, " << unequal
        << " with unequal rasters";
    return {{csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

inline PipelineArtifacts run_caruso_pipeline(Complex beta, const CarusoCheckConfig& cfg,
                                             const std::string& out_dir) {
    const auto dir = prepare_output_dir(out_dir);
    const auto rasters = caruso_rasters(beta, cfg);
    const auto report = caruso_intersection_check(beta, rasters, cfg);

    const std::string provenance = "caruso check, beta=" + detail::format_double(beta.real()) +
                                   "+" + detail::format_double(beta.imag()) + "i, master_seed=" +
                                   std::to_string(cfg.raster.chain.rng_seed);
    const std::string image_s = (dir / "s_beta.pgm").string();
    const std::string image_sp = (dir / "s_beta_prime.pgm").string();
    const std::string text_path = (dir / "caruso.txt").string();
    const std::string csv_path = (dir / "caruso.csv").string();
    write_image(rasters.s, image_s, provenance + " J(S_beta)");
    write_image(rasters.s_prime, image_sp, provenance + " J(S_beta')");
    write_report_files(text_path, csv_path, report);
    const bool chain = cfg.raster.method == JuliaRasterConfig::Method::random_chain;
    write_runspec(dir, "caruso",
                  {{"beta_re", detail::format_double(beta.real())},
                   {"beta_im", detail::format_double(beta.imag())},
                   {"raster_method", chain ? "random_chain" : "full_pullback"},
                   {"raster_budget", chain ? std::to_string(cfg.raster.chain.length) + " steps"
                                           : "depth " + std::to_string(cfg.raster.full_depth)},
                   {"master_seed", std::to_string(cfg.raster.chain.rng_seed)},
                   {"raster_resolution", std::to_string(cfg.raster.resolution)}});
    std::ostringstream sum;
    report.write_text(sum);
    return {{image_s, image_sp, text_path, csv_path, (dir / "runspec.txt").string()}, sum.str()};
}

}  // namespace mobjul
