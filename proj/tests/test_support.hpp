#pragma once

#include <cmath>

#include "mobjul/moebius.hpp"
#include "mobjul/rng.hpp"
#include "mobjul/sphere.hpp"

namespace testsupport {

using mobjul::Complex;
using mobjul::MoebiusMap;
using mobjul::SpherePoint;

inline double uniform(mobjul::SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_double();
}

inline Complex random_complex(mobjul::SplitMix64& rng, double scale = 2.0) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

/// A generic nonsingular map with entries in a moderate box.
inline MoebiusMap random_map(mobjul::SplitMix64& rng) {
    for (;;) {
        const Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng),
                      d = random_complex(rng);
        if (std::abs(a * d - b * c) > 1e-3) return MoebiusMap(a, b, c, d);
    }
}

inline MoebiusMap random_loxodromic_map(mobjul::SplitMix64& rng) {
    for (;;) {
        const MoebiusMap m = random_map(rng);
        if (mobjul::is_loxodromic(mobjul::classify(m))) return m;
    }
}

/// A sphere point, occasionally infinity or large.
inline SpherePoint random_point(mobjul::SplitMix64& rng) {
    const double u = rng.next_double();
    if (u < 0.05) return SpherePoint::infinity();
    if (u < 0.15) return SpherePoint(random_complex(rng, 1e6));
    return SpherePoint(random_complex(rng, 3.0));
}

}  // namespace testsupport
