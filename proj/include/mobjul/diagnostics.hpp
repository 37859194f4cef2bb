#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobjul/errors.hpp"
#include "mobjul/full_backward.hpp"
#include "mobjul/measure.hpp"
#include "mobjul/moebius.hpp"
#include "mobjul/nearest.hpp"
#include "mobjul/random_backward.hpp"
#include "mobjul/raster.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

// ---------------------------------------------------------------------------
// Weak* machinery: a finite separating family of chordal bump functions
// stands in for C(C^) when comparing measures.
// ---------------------------------------------------------------------------

/// Bumps phi_c(z) = exp(-d(z, c)^2 / s^2) centered on a fixed grid. The
/// default grid is a 64-point Fibonacci-sphere lattice, which separates
/// measures well enough for all the convergence checks while keeping the
/// pairing computable.
class TestFunctionFamily {
public:
    TestFunctionFamily(std::vector<SpherePoint> centers, double width) : width_(width) {
        if (centers.size() < 8)
            throw std::invalid_argument("TestFunctionFamily: need at least 8 centers");
        if (!(width > 0.0)) throw std::invalid_argument("TestFunctionFamily: width must be > 0");
        centers_ = std::move(centers);
        embedded_.reserve(centers_.size());
        for (const auto& c : centers_) embedded_.push_back(embed3(c));
    }

    /// 64 centers from a Fibonacci lattice on the sphere, width 0.35.
    static TestFunctionFamily default_family() {
        constexpr std::size_t n = 64;
        constexpr double golden_angle = 2.39996322972865332;  // pi (3 - sqrt 5)
        std::vector<SpherePoint> centers;
        centers.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double zs = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
            const double r = std::sqrt(std::max(0.0, 1.0 - zs * zs));
            const double ang = golden_angle * static_cast<double>(i);
            // Stereographic chart of the lattice point (never at the pole).
            const Complex z(r * std::cos(ang) / (1.0 - zs), r * std::sin(ang) / (1.0 - zs));
            centers.push_back(SpherePoint(z));
        }
        return TestFunctionFamily(std::move(centers), 0.35);
    }

    std::size_t size() const { return centers_.size(); }
    double width() const { return width_; }
    const std::vector<SpherePoint>& centers() const { return centers_; }

    double evaluate(std::size_t i, const SpherePoint& z) const {
        const auto e = embed3(z);
        return evaluate_embedded(i, e);
    }

    /// The vector of pairings <phi_i, mu> over the whole family; computing
    /// it once per measure makes discrepancies against many partners cheap.
    std::vector<double> signature(const WeightedPointSet& mu) const {
        std::vector<double> sig(size(), 0.0);
        const double inv_s2 = 1.0 / (width_ * width_);
        for (const auto& atom : mu.atoms()) {
            const auto e = embed3(atom.point);
            for (std::size_t i = 0; i < embedded_.size(); ++i) {
                const auto& c = embedded_[i];
                const double d2 = (e[0] - c[0]) * (e[0] - c[0]) + (e[1] - c[1]) * (e[1] - c[1]) +
                                  (e[2] - c[2]) * (e[2] - c[2]);
                sig[i] += atom.weight * std::exp(-d2 * inv_s2);
            }
        }
        return sig;
    }

private:
    std::vector<SpherePoint> centers_;
    std::vector<std::array<double, 3>> embedded_;
    double width_;

    double evaluate_embedded(std::size_t i, const std::array<double, 3>& e) const {
        const auto& c = embedded_.at(i);
        const double d2 = (e[0] - c[0]) * (e[0] - c[0]) + (e[1] - c[1]) * (e[1] - c[1]) +
                          (e[2] - c[2]) * (e[2] - c[2]);
        return std::exp(-d2 / (width_ * width_));
    }
};

/// <phi, mu> = sum_i w_i phi(z_i).
template <typename Phi>
inline double integrate(Phi&& phi, const WeightedPointSet& mu) {
    double acc = 0.0;
    for (const auto& atom : mu.atoms()) acc += atom.weight * phi(atom.point);
    return acc;
}

inline double discrepancy_from_signatures(const std::vector<double>& s1,
                                          const std::vector<double>& s2) {
    if (s1.size() != s2.size())
        throw std::invalid_argument("discrepancy: signature size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) worst = std::max(worst, std::abs(s1[i] - s2[i]));
    return worst;
}

/// max over the family of |<phi, mu1> - <phi, mu2>|: a pseudometric
/// surrogate for the weak* topology.
inline double weak_star_discrepancy(const WeightedPointSet& mu1, const WeightedPointSet& mu2,
                                    const TestFunctionFamily& family) {
    return discrepancy_from_signatures(family.signature(mu1), family.signature(mu2));
}

/// Residual of T_b*-invariance of mu in the weak* surrogate: zero exactly
/// when mu is a fixed point of the pullback on the family.
inline double invariance_residual(const GeneratorSet& g, const ProbabilityVector& b,
                                  const WeightedPointSet& mu, const TestFunctionFamily& family) {
    return weak_star_discrepancy(pullback_step(g, b, mu), mu, family);
}

/// Cesaro residuals r_N = |(1/N) sum_{j<=N} phi(z_j) - <phi, mu_ref>| at
/// N = 100, 1000, 10000, ... up to the orbit length (the orbit length
/// itself is always included as the last sample).
template <typename Phi>
inline std::vector<std::pair<std::size_t, double>> cesaro_convergence_check(
    const RandomOrbit& orbit, Phi&& phi, const WeightedPointSet& mu_ref) {
    if (orbit.length() < 1000)
        throw std::invalid_argument("cesaro_convergence_check: orbit too short");
    const double ref = integrate(phi, mu_ref);
    std::vector<std::pair<std::size_t, double>> residuals;
    double acc = 0.0;
    std::size_t next = 100;
    for (std::size_t j = 0; j < orbit.length(); ++j) {
        acc += phi(orbit.points[j]);
        const std::size_t n = j + 1;
        if (n == next || n == orbit.length()) {
            residuals.emplace_back(n, std::abs(acc / static_cast<double>(n) - ref));
            if (n == next) next *= 10;
        }
    }
    return residuals;
}

// ---------------------------------------------------------------------------
// Set-level comparisons
// ---------------------------------------------------------------------------

/// Directed chordal Hausdorff distance sup_{a in A} d(a, B).
inline double directed_hausdorff(const std::vector<SpherePoint>& a, const PointSetIndex& b_index) {
    double worst = 0.0;
    for (const auto& p : a) {
        const double d = b_index.distance_at_most(p, worst);
        if (d > worst) worst = d;
    }
    return worst;
}

/// Symmetric chordal Hausdorff distance between nonempty point sets.
inline double hausdorff_distance(const std::vector<SpherePoint>& a,
                                 const std::vector<SpherePoint>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty set");
    const PointSetIndex ia(a), ib(b);
    return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

/// Hausdorff distance between the occupied-cell center sets of two rasters.
inline double hausdorff_distance(const RasterSet& a, const RasterSet& b) {
    return hausdorff_distance(a.occupied_centers(), b.occupied_centers());
}

/// Distance summary of an orbit against a Julia raster: maximum and median
/// over the final tenth of the steps, plus the median over the second tenth
/// for decay comparisons. Distances are to the raster as a set, resolved at
/// raster precision: anything inside a cell radius of an occupied center
/// counts as on the raster.
struct OrbitDistanceStats {
    double tail_max = 0.0;
    double tail_median = 0.0;
    double head_median = 0.0;
};

namespace detail {

inline double median_in_place(std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("median of empty range");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

}  // namespace detail

inline OrbitDistanceStats orbit_to_julia_distance(const RandomOrbit& orbit,
                                                  const PointSetIndex& julia,
                                                  double cell_radius = 0.0) {
    const std::size_t n = orbit.length();
    if (n < 10) throw std::invalid_argument("orbit_to_julia_distance: orbit too short");
    OrbitDistanceStats stats;
    const auto set_distance = [&](const SpherePoint& p) {
        return std::max(0.0, julia.distance(p) - cell_radius);
    };
    std::vector<double> window;

    // Head window: steps in (n/10, 2n/10].
    window.reserve(n / 10 + 1);
    for (std::size_t m = n / 10; m < 2 * n / 10; ++m)
        window.push_back(set_distance(orbit.points[m]));
    stats.head_median = detail::median_in_place(window);

    // Tail window: the final tenth (9n/10, n].
    window.clear();
    for (std::size_t m = 9 * n / 10; m < n; ++m)
        window.push_back(set_distance(orbit.points[m]));
    std::vector<double> tail_copy = window;
    stats.tail_median = detail::median_in_place(window);
    stats.tail_max = *std::max_element(tail_copy.begin(), tail_copy.end());
    return stats;
}

inline OrbitDistanceStats orbit_to_julia_distance(const RandomOrbit& orbit,
                                                  const RasterSet& julia) {
    const auto centers = julia.occupied_centers();
    if (centers.empty()) throw std::invalid_argument("orbit_to_julia_distance: empty raster");
    return orbit_to_julia_distance(orbit, PointSetIndex(centers), julia.cell_diameter() / 2.0);
}

// ---------------------------------------------------------------------------
// Fixed-point clouds and invariance checks
// ---------------------------------------------------------------------------

/// Fixed points of the requested kind over all nonempty words of length at
/// most max_len. The repelling cloud of G approximates J(G); the attracting
/// cloud approximates J(G^-1). Identity-valued, parabolic, and elliptic
/// words contribute no points and are tallied instead.
struct FixedPointCloud {
    std::vector<SpherePoint> points;
    std::vector<Word> words;  // word that produced each point
    std::uint64_t words_total = 0;
    std::uint64_t identity_words = 0;
    std::uint64_t parabolic_words = 0;
    std::uint64_t elliptic_words = 0;
};

inline FixedPointCloud fixed_point_cloud(const GeneratorSet& g, std::size_t max_len,
                                         FixedPointKind kind,
                                         std::uint64_t word_budget = 2'000'000) {
    if (max_len < 1) throw std::invalid_argument("fixed_point_cloud: max_len must be >= 1");
    if (kind == FixedPointKind::neutral)
        throw std::invalid_argument("fixed_point_cloud: kind must be attracting or repelling");
    const double k = static_cast<double>(g.size());
    double total = 0.0;
    for (std::size_t n = 1; n <= max_len; ++n) total += std::pow(k, static_cast<double>(n));
    if (total > static_cast<double>(word_budget))
        throw budget_exceeded("fixed_point_cloud: word budget exceeded");

    FixedPointCloud cloud;
    // DFS over word prefixes, composing one generator at a time.
    struct Frame {
        MoebiusMap m;
        Word word;
    };
    std::vector<Frame> stack;
    for (std::size_t j = g.size(); j-- > 0;) stack.push_back({g.map(j), Word{{j}}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        ++cloud.words_total;
        switch (classify(f.m)) {
            case MapClass::identity:
                ++cloud.identity_words;
                break;
            case MapClass::parabolic:
                ++cloud.parabolic_words;
                break;
            case MapClass::elliptic:
                ++cloud.elliptic_words;
                break;
            default: {
                for (const auto& fp : fixed_points(f.m).points)
                    if (fp.kind == kind) {
                        cloud.points.push_back(fp.point);
                        cloud.words.push_back(f.word);
                    }
                break;
            }
        }
        if (f.word.length() < max_len)
            for (std::size_t j = g.size(); j-- > 0;) {
                Word w = f.word;
                w.indices.push_back(j);
                stack.push_back({compose(f.m, g.map(j)), std::move(w)});
            }
    }
    return cloud;
}

/// Set-level check of g^{-1}(J(G)) subset J(G): the largest distance from
/// any pulled-back member of the set to the set itself.
inline double backward_invariance_check(const GeneratorSet& g,
                                        const std::vector<SpherePoint>& julia) {
    if (julia.empty()) throw std::invalid_argument("backward_invariance_check: empty set");
    const PointSetIndex index(julia);
    const auto inv = g.inverse_maps();
    double worst = 0.0;
    for (const auto& z : julia)
        for (const auto& m : inv) {
            const double d = index.distance_at_most(apply(m, z), worst);
            if (d > worst) worst = d;
        }
    return worst;
}

inline double backward_invariance_check(const GeneratorSet& g, const RasterSet& julia) {
    return backward_invariance_check(g, julia.occupied_centers());
}

}  // namespace mobjul
