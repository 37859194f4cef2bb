#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mobjul/diagnostics.hpp"
#include "mobjul/random_backward.hpp"
#include "mobjul/raster.hpp"
#include "mobjul/report.hpp"
#include "mobjul/rng.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

// ---------------------------------------------------------------------------
// Exceptional-set heuristic
// ---------------------------------------------------------------------------

enum class OrbitFiniteness { finite_suspected, not_finite, inconclusive };

inline const char* to_string(OrbitFiniteness v) {
    switch (v) {
        case OrbitFiniteness::finite_suspected: return "finite-suspected";
        case OrbitFiniteness::not_finite: return "not-finite";
        case OrbitFiniteness::inconclusive: return "inconclusive";
    }
    return "?";
}

struct BackwardOrbitProbe {
    OrbitFiniteness verdict = OrbitFiniteness::inconclusive;
    std::vector<SpherePoint> points;  // the explored closed orbit
    std::size_t depth_reached = 0;
};

/// Breadth-first exploration of the backward orbit of z under G with a
/// point-coincidence tolerance: finite-suspected when the set stabilizes
/// with at most size_bound points, not-finite once it grows past the bound.
/// Strictly a numeric heuristic; no rigorous certification of E(G).
inline BackwardOrbitProbe exceptional_orbit_heuristic(const GeneratorSet& g, const SpherePoint& z,
                                                      std::size_t depth = 10,
                                                      std::size_t size_bound = 64) {
    const auto inv = g.inverse_maps();
    BackwardOrbitProbe probe;
    probe.points.push_back(z);
    std::vector<SpherePoint> frontier{z};
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<SpherePoint> next;
        for (const auto& p : frontier)
            for (const auto& m : inv) {
                const SpherePoint q = apply(m, p);
                bool known = false;
                for (const auto& seen : probe.points)
                    if (points_coincide(seen, q)) {
                        known = true;
                        break;
                    }
                if (!known) {
                    probe.points.push_back(q);
                    next.push_back(q);
                    if (probe.points.size() > size_bound) {
                        probe.verdict = OrbitFiniteness::not_finite;
                        probe.depth_reached = level + 1;
                        return probe;
                    }
                }
            }
        probe.depth_reached = level + 1;
        if (next.empty()) {
            probe.verdict = OrbitFiniteness::finite_suspected;
            return probe;
        }
        frontier = std::move(next);
    }
    probe.verdict = OrbitFiniteness::inconclusive;
    return probe;
}

// ---------------------------------------------------------------------------
// Precondition advisor
// ---------------------------------------------------------------------------

/// How a Julia raster is drawn for the set-level checks. The full
/// pullback with coalescing reaches the slow (parabolic-type) ends of the
/// Julia sets at depths a chain of practical length cannot, so it is the
/// default; the chain remains available for the classic chaos-game picture.
struct JuliaRasterConfig {
    enum class Method { full_pullback, random_chain };
    Method method = Method::full_pullback;
    std::size_t full_depth = 160;
    double full_coalesce = 1e-4;
    ChainConfig chain{200'000, 100, 1, 1};
    std::size_t resolution = 512;
};

struct AdvisorConfig {
    JuliaRasterConfig raster;
    std::optional<SpherePoint> seed_point;  // default: repelling generator fixed point
    std::size_t heuristic_depth = 10;
    std::size_t heuristic_size_bound = 64;
};

namespace detail {

/// Default chain seed: the repelling fixed point of the first loxodromic
/// generator lies in J(G); otherwise fall back to a fixed generic point.
inline SpherePoint default_seed_point(const GeneratorSet& g) {
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!is_loxodromic(classify(g.map(j)))) continue;
        for (const auto& fp : fixed_points(g.map(j)).points)
            if (fp.kind == FixedPointKind::repelling) return fp.point;
    }
    return SpherePoint(0.4, 0.3);
}

inline RasterSet julia_raster(const GeneratorSet& g, const ProbabilityVector& b,
                              const SpherePoint& seed, const JuliaRasterConfig& cfg) {
    RenderConfig rc;
    rc.resolution = cfg.resolution;
    rc.mode = ChartMode::dual;
    if (cfg.method == JuliaRasterConfig::Method::random_chain) {
        const auto orbit = random_backward_orbit(g, seed, b, cfg.chain);
        return rasterize(empirical_measure(orbit, cfg.chain.burn_in), rc);
    }
    FullRunConfig fc;
    fc.depth = cfg.full_depth;
    fc.seed = seed;
    fc.coalesce_tol = cfg.full_coalesce;
    return rasterize(full_backward_measure(g, b, fc).measure, rc);
}

/// Greedy far-point selection; finding `want` points pairwise farther than
/// `min_dist` certifies the count, failing to is only evidence against.
inline bool has_far_points(const std::vector<SpherePoint>& pts, double min_dist,
                           std::size_t want) {
    std::vector<SpherePoint> chosen;
    for (const auto& p : pts) {
        bool far = true;
        for (const auto& c : chosen)
            if (chordal_distance(p, c) <= min_dist) {
                far = false;
                break;
            }
        if (far) {
            chosen.push_back(p);
            if (chosen.size() >= want) return true;
        }
    }
    return false;
}

/// Does the raster have an occupied cell with all 8 neighbors occupied?
inline bool has_interior_cell(const RasterSet& raster) {
    const std::size_t r = raster.resolution();
    for (std::size_t chart = 0; chart < raster.chart_count(); ++chart) {
        const auto& g = raster.chart(chart);
        for (std::size_t iy = 1; iy + 1 < r; ++iy)
            for (std::size_t ix = 1; ix + 1 < r; ++ix) {
                bool all = true;
                for (long dy = -1; dy <= 1 && all; ++dy)
                    for (long dx = -1; dx <= 1 && all; ++dx)
                        all = g[static_cast<std::size_t>(static_cast<long>(iy) + dy) * r +
                                static_cast<std::size_t>(static_cast<long>(ix) + dx)] > 0.0;
                if (all) return true;
            }
    }
    return false;
}

/// Forward-orbit closure of p under the generators of `g`, with the same
/// finiteness bookkeeping as the backward probe (forward orbit under g is
/// the backward orbit under the inverse semigroup).
inline BackwardOrbitProbe forward_orbit_probe(const GeneratorSet& g, const SpherePoint& p,
                                              std::size_t depth, std::size_t bound) {
    return exceptional_orbit_heuristic(inverse_semigroup(g), p, depth, bound);
}

inline std::string point_to_string(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    const double re = p.re() == 0.0 ? 0.0 : p.re();  // normalize -0
    const double im = p.im() == 0.0 ? 0.0 : p.im();
    std::ostringstream os;
    os << re << (im < 0 ? "" : "+") << im << "i";
    return os.str();
}

}  // namespace detail

/// Heuristic verdicts on the hypotheses of the J_ker = emptyset lemmas and
/// the thick-attractor criterion, evaluated on rasterized stand-ins for
/// J(G) and J(G^-1). Every verdict is marked heuristic; nothing here is a
/// rigorous certification.
inline ConvergenceReport precondition_advisor(const GeneratorSet& g, const ProbabilityVector& b,
                                              const AdvisorConfig& cfg = {}) {
    ConvergenceReport report;
    report.title = "precondition advisor";

    const GeneratorSet g_inv = inverse_semigroup(g);
    const SpherePoint seed_g = cfg.seed_point ? *cfg.seed_point : detail::default_seed_point(g);
    const SpherePoint seed_gi =
        cfg.seed_point ? *cfg.seed_point : detail::default_seed_point(g_inv);

    const RasterSet raster_g = detail::julia_raster(g, b, seed_g, cfg.raster);
    const RasterSet raster_gi = detail::julia_raster(g_inv, b, seed_gi, cfg.raster);
    const double cd = raster_g.cell_diameter();

    const bool chain_method = cfg.raster.method == JuliaRasterConfig::Method::random_chain;
    report.metadata = {{"raster_method", chain_method ? "random_chain" : "full_pullback"},
                       {"raster_budget", chain_method
                                             ? std::to_string(cfg.raster.chain.length) + " steps"
                                             : "depth " + std::to_string(cfg.raster.full_depth)},
                       {"master_seed", std::to_string(cfg.raster.chain.rng_seed)},
                       {"raster_resolution", std::to_string(cfg.raster.resolution)},
                       {"seed_point_G", detail::point_to_string(seed_g)},
                       {"seed_point_Ginv", detail::point_to_string(seed_gi)},
                       {"cell_diameter", detail::format_double(cd)}};

    const auto centers_g = raster_g.occupied_centers();
    const auto centers_gi = raster_gi.occupied_centers();
    const PointSetIndex index_g(centers_g);
    const PointSetIndex index_gi(centers_gi);

    // Raster geometry shared by several hypotheses.
    const double diff_gi_minus_g = directed_hausdorff(centers_gi, index_g);
    const double diff_g_minus_gi = directed_hausdorff(centers_g, index_gi);
    double min_gap = 1e99;
    for (const auto& p : centers_g) {
        const double d = index_gi.distance(p);
        if (d < min_gap) min_gap = d;
    }
    const bool disjoint = min_gap > 2.0 * cd;
    const bool diff_nonempty_gi = diff_gi_minus_g > 2.0 * cd;  // J(G^-1) \ J(G) != empty
    const bool diff_nonempty_g = diff_g_minus_gi > 2.0 * cd;   // J(G) \ J(G^-1) != empty
    const bool many_g = detail::has_far_points(centers_g, 3.0 * cd, 3);
    const bool many_gi = detail::has_far_points(centers_gi, 3.0 * cd, 3);
    const bool interior_g = detail::has_interior_cell(raster_g);
    const bool interior_gi = detail::has_interior_cell(raster_gi);

    bool all_loxodromic = true;
    for (std::size_t j = 0; j < g.size(); ++j)
        all_loxodromic = all_loxodromic && is_loxodromic(classify(g.map(j)));

    // Exceptional-set candidates: fixed points of the generators.
    std::vector<SpherePoint> candidates;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (classify(g.map(j)) == MapClass::identity) continue;
        for (const auto& fp : fixed_points(g.map(j)).points) {
            bool known = false;
            for (const auto& c : candidates)
                if (points_coincide(c, fp.point, 1e-9)) known = true;
            if (!known) candidates.push_back(fp.point);
        }
    }

    // E(G) candidates that the backward probe says are finite, split by
    // whether they touch the Julia rasters.
    std::vector<SpherePoint> exceptional_g, exceptional_gi;
    for (const auto& p : candidates) {
        if (exceptional_orbit_heuristic(g, p, cfg.heuristic_depth, cfg.heuristic_size_bound)
                .verdict == OrbitFiniteness::finite_suspected)
            exceptional_g.push_back(p);
        if (exceptional_orbit_heuristic(g_inv, p, cfg.heuristic_depth, cfg.heuristic_size_bound)
                .verdict == OrbitFiniteness::finite_suspected)
            exceptional_gi.push_back(p);
    }
    // Conflicts with the lemma hypotheses: E(S^-1) meeting J(S).
    std::string econflict_g_note, econflict_gi_note, e_in_julia_note;
    bool econflict_for_g = false;   // E(G^-1) meets J(G)
    bool econflict_for_gi = false;  // E(G) meets J(G^-1)
    bool e_meets_julia_g = false;   // E(G) meets J(G)
    for (const auto& p : exceptional_gi)
        if (index_g.distance(p) <= 2.0 * cd) {
            econflict_for_g = true;
            econflict_g_note += detail::point_to_string(p) + " ";
        }
    for (const auto& p : exceptional_g) {
        if (index_gi.distance(p) <= 2.0 * cd) {
            econflict_for_gi = true;
            econflict_gi_note += detail::point_to_string(p) + " ";
        }
        if (index_g.distance(p) <= 2.0 * cd) {
            e_meets_julia_g = true;
            e_in_julia_note += detail::point_to_string(p) + " ";
        }
    }

    // Finite sets forward-invariant under G^-1 that touch either raster:
    // evidence that J_ker(G^-1) is nonempty, i.e. the theorems' hypothesis
    // fails and both drawing methods may degenerate.
    std::vector<SpherePoint> kernel_members;
    for (const auto& p : candidates) {
        const auto probe =
            detail::forward_orbit_probe(g_inv, p, cfg.heuristic_depth, 8);
        if (probe.verdict != OrbitFiniteness::finite_suspected) continue;
        bool invariant_in_raster = false;
        for (const auto& q : probe.points)
            if (index_g.distance(q) <= 2.0 * cd || index_gi.distance(q) <= 2.0 * cd)
                invariant_in_raster = true;
        if (!invariant_in_raster) continue;
        for (const auto& q : probe.points) {
            bool known = false;
            for (const auto& m : kernel_members)
                if (points_coincide(m, q, 1e-9)) known = true;
            if (!known) kernel_members.push_back(q);
        }
    }

    const auto add = [&](const std::string& name, bool ok, double stat, double tol,
                         const std::string& note) {
        CheckResult c;
        c.name = name;
        c.passed = ok;
        c.statistic = stat;
        c.tolerance = tol;
        c.heuristic = true;
        c.note = note;
        report.checks.push_back(std::move(c));
    };

    // Hypothesis pieces, reported on their own.
    add("difference_Jinv_minus_J_nonempty", diff_nonempty_gi, diff_gi_minus_g, 2.0 * cd,
        "directed Hausdorff J^(G^-1) -> J^(G)");
    add("difference_J_minus_Jinv_nonempty", diff_nonempty_g, diff_g_minus_gi, 2.0 * cd,
        "directed Hausdorff J^(G) -> J^(G^-1)");
    add("rasters_disjoint", disjoint, min_gap, 2.0 * cd, "min cell-center gap");
    add("generators_all_loxodromic", all_loxodromic, all_loxodromic ? 1.0 : 0.0, 1.0, "");

    // Lemma 5.1 applied to S = G: J(S^-1)\J(S) != empty and E(S^-1) cap
    // J(S) = empty give J_ker(G) = empty. Applied to S = G^-1 it gives the
    // theorems' hypothesis J_ker(G^-1) = empty.
    add("lemma_5_1_for_G", diff_nonempty_gi && !econflict_for_g,
        diff_nonempty_gi && !econflict_for_g ? 1.0 : 0.0, 1.0,
        econflict_for_g ? "E(G^-1) candidates on J^(G): " + econflict_g_note
                        : "difference nonempty, E-heuristic empty");
    add("lemma_5_1_for_Ginv", diff_nonempty_g && !econflict_for_gi,
        diff_nonempty_g && !econflict_for_gi ? 1.0 : 0.0, 1.0,
        econflict_for_gi ? "E(G) candidates on J^(G^-1): " + econflict_gi_note
                         : "difference nonempty, E-heuristic empty");
    add("lemma_5_2_for_G", interior_g && !econflict_for_g, interior_g ? 1.0 : 0.0, 1.0,
        "requires an interior cell in J^(G)");
    add("lemma_5_2_for_Ginv", interior_gi && !econflict_for_gi, interior_gi ? 1.0 : 0.0, 1.0,
        "requires an interior cell in J^(G^-1)");
    add("lemma_5_3_for_G", many_g && disjoint, many_g && disjoint ? 1.0 : 0.0, 1.0,
        many_g ? (disjoint ? "" : "rasters intersect") : "#J(G) >= 3 not confirmed");
    add("lemma_5_3_for_Ginv", many_gi && disjoint, many_gi && disjoint ? 1.0 : 0.0, 1.0,
        many_gi ? (disjoint ? "" : "rasters intersect") : "#J(G^-1) >= 3 not confirmed");
    add("thick_attractor", disjoint && all_loxodromic, disjoint && all_loxodromic ? 1.0 : 0.0,
        1.0, "J^(G) cap J^(G^-1) empty and loxodromic generators");

    // Negative evidence: these firing means the drawing hypotheses fail.
    add("j_ker_inverse_nonempty_evidence", kernel_members.empty(),
        static_cast<double>(kernel_members.size()), 0.0,
        kernel_members.empty() ? "no finite G^-1-invariant set found"
                               : "finite G^-1-invariant set in rasters: " + [&] {
                                     std::string s;
                                     for (const auto& m : kernel_members)
                                         s += detail::point_to_string(m) + " ";
                                     return s;
                                 }());
    add("exceptional_meets_julia", !e_meets_julia_g, e_meets_julia_g ? 1.0 : 0.0, 0.0,
        e_meets_julia_g ? "E(G) cap J(G) candidates: " + e_in_julia_note : "none found");

    // Headline: does any lemma support J_ker(G^-1) = empty?
    const bool gi_supported = (diff_nonempty_g && !econflict_for_gi) ||
                              (interior_gi && !econflict_for_gi) || (many_gi && disjoint);
    add("j_ker_inverse_empty_supported", gi_supported && kernel_members.empty(),
        gi_supported ? 1.0 : 0.0, 1.0,
        gi_supported ? "a lemma hypothesis holds at raster scale"
                     : "no lemma hypothesis confirmed");
    return report;
}

// ---------------------------------------------------------------------------
// Caruso-family checks
// ---------------------------------------------------------------------------

struct CarusoCheckConfig {
    JuliaRasterConfig raster;
    double intersection_tol = 0.05;
    double inequality_cell_diameters = 5.0;
};

namespace detail {

inline std::vector<SpherePoint> caruso_designated_points(Complex beta) {
    const double tol = 1e-12;
    const auto is = [&](double re, double im) {
        return std::abs(beta.real() - re) < tol && std::abs(beta.imag() - im) < tol;
    };
    if (is(1, 1) || is(1, -1) || is(-1, 1) || is(-1, -1))
        return {SpherePoint(1, 0), SpherePoint(-1, 0), SpherePoint(0, 1), SpherePoint(0, -1)};
    if (is(2, 0) || is(-2, 0) || is(0, 2) || is(0, -2)) {
        const Complex h = beta / 2.0;
        return {SpherePoint(h), SpherePoint(-h)};
    }
    throw std::invalid_argument(
        "caruso_intersection_check: beta must be one of +-1+-i, +-2, +-2i");
}

}  // namespace detail

/// The random-method rasters of J(S_beta) and J(S_beta'), seeded at
/// repelling generator fixed points of the respective semigroup.
struct CarusoRasters {
    RasterSet s;
    RasterSet s_prime;
};

inline CarusoRasters caruso_rasters(Complex beta, const CarusoCheckConfig& cfg = {}) {
    const GeneratorSet s = caruso(beta);
    const GeneratorSet s_prime = inverse_semigroup(s);
    const auto b = ProbabilityVector::uniform(2);
    return {detail::julia_raster(s, b, detail::default_seed_point(s), cfg.raster),
            detail::julia_raster(s_prime, b, detail::default_seed_point(s_prime), cfg.raster)};
}

/// For the betas with known J(S_beta) cap J(S_beta') from the literature,
/// verifies that each designated intersection point lies on both rasters
/// and that the rasters are nevertheless unequal.
inline ConvergenceReport caruso_intersection_check(Complex beta, const CarusoRasters& rasters,
                                                   const CarusoCheckConfig& cfg = {}) {
    const auto designated = detail::caruso_designated_points(beta);
    const RasterSet& raster_s = rasters.s;
    const RasterSet& raster_sp = rasters.s_prime;
    const double cd = raster_s.cell_diameter();

    const auto centers_s = raster_s.occupied_centers();
    const auto centers_sp = raster_sp.occupied_centers();
    const PointSetIndex index_s(centers_s);
    const PointSetIndex index_sp(centers_sp);

    ConvergenceReport report;
    report.title = "caruso intersection check";
    const bool chain_method = cfg.raster.method == JuliaRasterConfig::Method::random_chain;
    report.metadata = {{"beta_re", detail::format_double(beta.real())},
                       {"beta_im", detail::format_double(beta.imag())},
                       {"raster_method", chain_method ? "random_chain" : "full_pullback"},
                       {"raster_budget", chain_method
                                             ? std::to_string(cfg.raster.chain.length) + " steps"
                                             : "depth " + std::to_string(cfg.raster.full_depth)},
                       {"master_seed", std::to_string(cfg.raster.chain.rng_seed)},
                       {"raster_resolution", std::to_string(cfg.raster.resolution)},
                       {"cell_diameter", detail::format_double(cd)}};

    for (const auto& p : designated) {
        const double ds = index_s.distance(p);
        const double dsp = index_sp.distance(p);
        CheckResult c;
        c.name = "intersection_point_" + detail::point_to_string(p);
        c.statistic = std::max(ds, dsp);
        c.tolerance = cfg.intersection_tol;
        c.passed = c.statistic <= cfg.intersection_tol;
        c.metadata = {{"distance_to_J(S)", detail::format_double(ds)},
                      {"distance_to_J(S')", detail::format_double(dsp)}};
        report.checks.push_back(std::move(c));
    }

    const double d_sp_from_s = directed_hausdorff(centers_sp, index_s);
    const double d_s_from_sp = directed_hausdorff(centers_s, index_sp);
    CheckResult uneq;
    uneq.name = "rasters_unequal";
    uneq.statistic = std::min(d_sp_from_s, d_s_from_sp);
    uneq.tolerance = cfg.inequality_cell_diameters * cd;
    uneq.passed = uneq.statistic > uneq.tolerance;
    uneq.note = "some cell of each raster is far from the other";
    uneq.metadata = {{"directed_S'_to_S", detail::format_double(d_sp_from_s)},
                     {"directed_S_to_S'", detail::format_double(d_s_from_sp)}};
    report.checks.push_back(std::move(uneq));
    return report;
}

inline ConvergenceReport caruso_intersection_check(Complex beta,
                                                   const CarusoCheckConfig& cfg = {}) {
    return caruso_intersection_check(beta, caruso_rasters(beta, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Beta scan
// ---------------------------------------------------------------------------

struct BetaScanConfig {
    double re0 = -2.0, re1 = 2.0, im0 = -2.0, im1 = 2.0;
    double step = 0.25;
    ChainConfig chain{100'000, 100, 1, 1};
    std::size_t raster_resolution = 256;
    std::uint64_t master_seed = 1;

    void validate() const {
        if (!(step > 0.0)) throw std::invalid_argument("BetaScanConfig: step must be > 0");
        if (!(re1 >= re0) || !(im1 >= im0))
            throw std::invalid_argument("BetaScanConfig: empty rectangle");
    }
};

struct BetaScanRow {
    Complex beta;
    double hausdorff = 0.0;
    bool equal_flag = false;
    std::uint64_t derived_seed = 0;
};

namespace detail {

/// caruso(beta) and caruso(-beta) are the same generator set up to order,
/// so the scan works on a canonical sign representative and derives the
/// per-point stream from its value: symmetric grids give identical rows.
inline Complex canonical_beta(Complex beta) {
    if (beta.real() < 0.0 || (beta.real() == 0.0 && beta.imag() < 0.0)) return -beta;
    return beta;
}

inline std::uint64_t beta_stream_index(Complex beta) {
    std::uint64_t re_bits, im_bits;
    const double re = beta.real() == 0.0 ? 0.0 : beta.real();
    const double im = beta.imag() == 0.0 ? 0.0 : beta.imag();
    std::memcpy(&re_bits, &re, sizeof re_bits);
    std::memcpy(&im_bits, &im, sizeof im_bits);
    return SplitMix64::mix64(re_bits) ^ (SplitMix64::mix64(im_bits) << 1);
}

}  // namespace detail

/// Empirical explorer for where J(S_beta) = J(S_beta'): per grid point,
/// both Julia rasters via the random method and their Hausdorff distance.
/// The grid must exclude beta = 0. Grid points run on parallel workers
/// with independently derived seeds; rows come back in grid order.
inline std::vector<BetaScanRow> beta_scan(const BetaScanConfig& cfg) {
    cfg.validate();
    std::vector<Complex> grid;
    for (double im = cfg.im0; im <= cfg.im1 + cfg.step * 0.5; im += cfg.step)
        for (double re = cfg.re0; re <= cfg.re1 + cfg.step * 0.5; re += cfg.step)
            grid.emplace_back(re, im);
    for (const auto& beta : grid)
        if (std::abs(beta) < 1e-12)
            throw std::invalid_argument("beta_scan: grid must exclude beta = 0");

    std::vector<BetaScanRow> rows(grid.size());
    const auto worker = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < grid.size(); i += stride) {
            const Complex beta = detail::canonical_beta(grid[i]);
            const std::uint64_t seed =
                SplitMix64::derive_stream(cfg.master_seed, detail::beta_stream_index(beta));
            JuliaRasterConfig rcfg;
            rcfg.method = JuliaRasterConfig::Method::random_chain;
            rcfg.chain = cfg.chain;
            rcfg.chain.rng_seed = seed;
            rcfg.resolution = cfg.raster_resolution;
            const GeneratorSet s = caruso(beta);
            const GeneratorSet sp = inverse_semigroup(s);
            const auto b = ProbabilityVector::uniform(2);
            const RasterSet ra = detail::julia_raster(s, b, detail::default_seed_point(s), rcfg);
            const RasterSet rb = detail::julia_raster(sp, b, detail::default_seed_point(sp), rcfg);
            const double h = hausdorff_distance(ra, rb);
            rows[i] = {grid[i], h, h <= 2.0 * ra.cell_diameter(), seed};
        }
    };
    const std::size_t nworkers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                       grid.size()));
    std::vector<std::future<void>> futures;
    for (std::size_t w = 1; w < nworkers; ++w)
        futures.push_back(std::async(std::launch::async, worker, w, nworkers));
    worker(0, nworkers);
    for (auto& f : futures) f.get();
    return rows;
}

}  // namespace mobjul
