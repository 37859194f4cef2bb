#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mobjul {

using Complex = std::complex<double>;

/// Any finite value whose modulus exceeds this is treated as the point at
/// infinity when produced by a map application. The chordal error of the
/// snap is below 1e-14.
inline constexpr double kInfinitySnap = 1e15;

/// Chordal distance below which two points are considered coincident.
inline constexpr double kCoincidenceTol = 1e-12;

/// A point of the extended complex plane: either a finite complex value or
/// the point at infinity.
class SpherePoint {
public:
    constexpr SpherePoint() : value_(0.0, 0.0), infinite_(false) {}
    constexpr SpherePoint(Complex z) : value_(z), infinite_(false) {}
    constexpr SpherePoint(double re, double im) : value_(re, im), infinite_(false) {}

    static constexpr SpherePoint infinity() {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    constexpr bool is_infinity() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; only meaningful when is_finite().
    constexpr Complex value() const { return value_; }
    double re() const { return value_.real(); }
    double im() const { return value_.imag(); }

    friend constexpr bool operator==(const SpherePoint& a, const SpherePoint& b) {
        if (a.infinite_ != b.infinite_) return false;
        if (a.infinite_) return true;
        return a.value_ == b.value_;
    }
    friend constexpr bool operator!=(const SpherePoint& a, const SpherePoint& b) {
        return !(a == b);
    }

private:
    Complex value_;
    bool infinite_;
};

/// Chordal (spherical) metric on the extended plane:
///   d(z, w) = 2|z - w| / sqrt((1 + |z|^2)(1 + |w|^2)),  d(z, inf) = 2 / sqrt(1 + |z|^2).
/// Symmetric, satisfies the triangle inequality, maximum 2 at antipodal pairs.
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(q.value()));
    if (q.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(p.value()));
    const double nz = std::norm(p.value());
    const double nw = std::norm(q.value());
    return 2.0 * std::abs(p.value() - q.value()) / std::sqrt((1.0 + nz) * (1.0 + nw));
}

/// Minimum chordal distance from p to a nonempty finite set.
inline double distance_to_set(const SpherePoint& p, const std::vector<SpherePoint>& set) {
    if (set.empty()) throw std::invalid_argument("distance_to_set: empty set");
    double best = chordal_distance(p, set.front());
    for (std::size_t i = 1; i < set.size() && best > 0.0; ++i) {
        const double d = chordal_distance(p, set[i]);
        if (d < best) best = d;
    }
    return best;
}

/// Embedding of the extended plane onto the unit sphere in R^3 for which the
/// chordal metric is exactly the Euclidean distance between images
/// (inverse stereographic projection from the north pole).
inline std::array<double, 3> embed3(const SpherePoint& p) {
    if (p.is_infinity()) return {0.0, 0.0, 1.0};
    const double n = std::norm(p.value());
    const double s = 1.0 / (n + 1.0);
    return {2.0 * p.re() * s, 2.0 * p.im() * s, (n - 1.0) * s};
}

/// Applies the near-infinity policy to a freshly computed map image.
inline SpherePoint snap_to_sphere(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kInfinitySnap)
        return SpherePoint::infinity();
    return SpherePoint(z);
}

inline bool points_coincide(const SpherePoint& p, const SpherePoint& q,
                            double tol = kCoincidenceTol) {
    return chordal_distance(p, q) < tol;
}

}  // namespace mobjul
