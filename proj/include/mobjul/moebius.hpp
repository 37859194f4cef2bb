#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobjul/sphere.hpp"

namespace mobjul {

inline constexpr double kSingularTol = 1e-12;
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kClassifyTol = 1e-9;

enum class MapClass { identity, parabolic, elliptic, hyperbolic, strictly_loxodromic };

inline bool is_loxodromic(MapClass c) {
    return c == MapClass::hyperbolic || c == MapClass::strictly_loxodromic;
}

inline const char* to_string(MapClass c) {
    switch (c) {
        case MapClass::identity: return "identity";
        case MapClass::parabolic: return "parabolic";
        case MapClass::elliptic: return "elliptic";
        case MapClass::hyperbolic: return "hyperbolic";
        case MapClass::strictly_loxodromic: return "strictly_loxodromic";
    }
    return "?";
}

/// A Moebius transformation m(z) = (az + b)/(cz + d), stored as a 2x2
/// complex matrix normalized to det = 1 with a canonical sign: the first
/// nonzero entry in order (a, b, c, d) has argument in [0, pi). The
/// canonical form makes the representation of a given map unique, so value
/// comparison and the tr^2 invariant do not depend on the input scale.
class MoebiusMap {
public:
    MoebiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

    MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
        normalize();
    }

    static MoebiusMap identity() { return MoebiusMap(); }

    /// z -> s z (s != 0).
    static MoebiusMap scaling(Complex s) {
        if (std::abs(s) == 0.0) throw std::invalid_argument("scaling: zero factor");
        return MoebiusMap(s, 0.0, 0.0, 1.0);
    }

    /// z -> z + t.
    static MoebiusMap translation(Complex t) { return MoebiusMap(1.0, t, 0.0, 1.0); }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex det() const { return a_ * d_ - b_ * c_; }
    Complex trace() const { return a_ + d_; }

    bool is_identity(double tol = kIdentityTol) const {
        // Canonical form of +-I is exactly I.
        return std::abs(a_ - 1.0) < tol && std::abs(b_) < tol && std::abs(c_) < tol &&
               std::abs(d_ - 1.0) < tol;
    }

private:
    Complex a_, b_, c_, d_;

    void normalize() {
        const Complex dt = a_ * d_ - b_ * c_;
        if (std::abs(dt) < kSingularTol)
            throw std::invalid_argument("MoebiusMap: singular matrix");
        const Complex s = std::sqrt(dt);
        a_ /= s;
        b_ /= s;
        c_ /= s;
        d_ /= s;
        // Resolve the +-M ambiguity.
        for (Complex e : {a_, b_, c_, d_}) {
            if (e.real() != 0.0 || e.imag() != 0.0) {
                const double arg = std::arg(e);
                if (arg < 0.0 || arg >= 3.14159265358979323846 ||
                    (e.imag() == 0.0 && e.real() < 0.0)) {
                    a_ = -a_;
                    b_ = -b_;
                    c_ = -c_;
                    d_ = -d_;
                }
                break;
            }
        }
    }
};

/// Evaluates m at a point of the extended plane. Total: poles map to
/// infinity, infinity maps to a/c (or stays fixed when c = 0).
inline SpherePoint apply(const MoebiusMap& m, const SpherePoint& p) {
    const bool c_zero = (m.c().real() == 0.0 && m.c().imag() == 0.0);
    if (p.is_infinity()) {
        if (c_zero) return SpherePoint::infinity();
        return snap_to_sphere(m.a() / m.c());
    }
    const Complex z = p.value();
    const Complex den = m.c() * z + m.d();
    if (den.real() == 0.0 && den.imag() == 0.0) return SpherePoint::infinity();
    return snap_to_sphere((m.a() * z + m.b()) / den);
}

/// Matrix product, renormalized: apply(compose(m1, m2), z) = m1(m2(z)).
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    return MoebiusMap(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                      m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
}

/// Adjugate matrix [[d, -b], [-c, a]], renormalized.
inline MoebiusMap inverse(const MoebiusMap& m) {
    return MoebiusMap(m.d(), -m.b(), -m.c(), m.a());
}

/// tr^2[m] = tr^2(M)/det(M), independent of the scalar representative.
inline Complex trace_squared_invariant(const MoebiusMap& m) {
    const Complex t = m.trace();
    return t * t / m.det();
}

/// Conjugacy class from the tr^2 invariant. The tolerance band around
/// tr^2 = 4 and around the real axis makes the classification deterministic
/// near the measure-zero parabolic boundary.
inline MapClass classify(const MoebiusMap& m, double tol = kClassifyTol) {
    if (m.is_identity()) return MapClass::identity;
    const Complex t = trace_squared_invariant(m);
    if (std::abs(t - 4.0) < tol) return MapClass::parabolic;
    if (std::abs(t.imag()) < tol) {
        const double x = t.real();
        if (x >= -tol && x < 4.0) return MapClass::elliptic;
        if (x > 4.0) return MapClass::hyperbolic;
    }
    return MapClass::strictly_loxodromic;
}

enum class FixedPointKind { attracting, repelling, neutral };

inline const char* to_string(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::attracting: return "attracting";
        case FixedPointKind::repelling: return "repelling";
        case FixedPointKind::neutral: return "neutral";
    }
    return "?";
}

struct FixedPoint {
    SpherePoint point;
    /// Derivative of the map at the fixed point (in the 1/z chart when the
    /// point is infinity); empty for the parabolic double point.
    std::optional<Complex> multiplier;
    FixedPointKind kind = FixedPointKind::neutral;
};

struct FixedPointReport {
    std::vector<FixedPoint> points;  // 1 entry (parabolic) or 2
    bool parabolic = false;
};

namespace detail {

inline FixedPointKind kind_from_multiplier(Complex lambda, double tol = kClassifyTol) {
    const double mag = std::abs(lambda);
    if (std::abs(mag - 1.0) < tol) return FixedPointKind::neutral;
    return mag < 1.0 ? FixedPointKind::attracting : FixedPointKind::repelling;
}

}  // namespace detail

/// Fixed points of a non-identity map: the roots of cz^2 + (d-a)z - b = 0,
/// with infinity fixed iff c = 0. Multipliers are m' at finite points and
/// are computed in the 1/z chart at infinity. Parabolic maps report the one
/// neutral double point, located as (a-d)/(2c) to avoid the cancellation in
/// the discriminant.
inline FixedPointReport fixed_points(const MoebiusMap& m, double tol = kClassifyTol) {
    if (m.is_identity()) throw std::invalid_argument("fixed_points: identity map");
    FixedPointReport report;
    const bool parabolic = classify(m, tol) == MapClass::parabolic;
    report.parabolic = parabolic;

    const bool c_zero = (m.c().real() == 0.0 && m.c().imag() == 0.0);
    if (c_zero) {
        // Affine map z -> (a/d) z + b/d; infinity is always fixed.
        if (parabolic) {
            report.points.push_back({SpherePoint::infinity(), std::nullopt,
                                     FixedPointKind::neutral});
            return report;
        }
        const Complex lam_inf = m.d() / m.a();
        report.points.push_back(
            {SpherePoint::infinity(), lam_inf, detail::kind_from_multiplier(lam_inf, tol)});
        const Complex zf = m.b() / (m.d() - m.a());
        const Complex lam = m.a() / m.d();
        report.points.push_back({SpherePoint(zf), lam, detail::kind_from_multiplier(lam, tol)});
        return report;
    }

    if (parabolic) {
        const Complex zf = (m.a() - m.d()) / (2.0 * m.c());
        report.points.push_back({SpherePoint(zf), std::nullopt, FixedPointKind::neutral});
        return report;
    }

    // Stable quadratic roots: q = -(B + sgn sqrt(disc))/2 with the sign that
    // avoids cancellation; the second root comes from the product -b/c.
    const Complex B = m.d() - m.a();
    const Complex disc = B * B + 4.0 * m.c() * m.b();
    Complex s = std::sqrt(disc);
    if (B.real() * s.real() + B.imag() * s.imag() < 0.0) s = -s;
    const Complex q = -0.5 * (B + s);
    Complex z1, z2;
    if (std::abs(q) > 0.0) {
        z1 = q / m.c();
        z2 = -m.b() / q;
    } else {
        // B = 0 and b = 0: symmetric pair +-sqrt over c.
        z1 = s / (2.0 * m.c());
        z2 = -z1;
    }
    // m'(z) = det/(cz+d)^2 = 1/(cz+d)^2 in normalized form.
    for (Complex zf : {z1, z2}) {
        const Complex den = m.c() * zf + m.d();
        const Complex lam = 1.0 / (den * den);
        report.points.push_back({SpherePoint(zf), lam, detail::kind_from_multiplier(lam, tol)});
    }
    return report;
}

/// Sign-insensitive distance between the normalized matrices: the canonical
/// sign rule is deterministic per matrix but not continuous, so comparisons
/// consider both representatives.
inline double map_distance(const MoebiusMap& m, const MoebiusMap& n) {
    const double dplus = std::abs(m.a() - n.a()) + std::abs(m.b() - n.b()) +
                         std::abs(m.c() - n.c()) + std::abs(m.d() - n.d());
    const double dminus = std::abs(m.a() + n.a()) + std::abs(m.b() + n.b()) +
                          std::abs(m.c() + n.c()) + std::abs(m.d() + n.d());
    return std::min(dplus, dminus);
}

inline bool maps_equal(const MoebiusMap& m, const MoebiusMap& n, double tol = 1e-9) {
    return map_distance(m, n) < tol;
}

}  // namespace mobjul
