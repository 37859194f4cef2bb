#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mobjul/measure.hpp"
#include "mobjul/rng.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

/// Configuration of a random backward iteration chain. The burn-in default
/// follows the usual practice of not plotting the first hundred or so
/// points.
struct ChainConfig {
    std::size_t length = 100'000;
    std::size_t burn_in = 100;
    std::uint64_t rng_seed = 1;
    std::size_t chain_count = 1;

    void validate() const {
        if (length == 0) throw std::invalid_argument("ChainConfig: length must be > 0");
        if (burn_in >= length) throw std::invalid_argument("ChainConfig: burn_in must be < length");
        if (chain_count == 0) throw std::invalid_argument("ChainConfig: chain_count must be > 0");
    }
};

/// A realized random backward orbit z_m = f^{-1}_{i_m}(z_{m-1}), z_0 = a.
/// (G, a, b, length, rng_seed, chain_index) fully determine the orbit.
struct RandomOrbit {
    SpherePoint seed;
    std::uint64_t rng_seed = 0;     // master seed
    std::uint64_t chain_index = 0;  // stream index under the master seed
    std::vector<std::size_t> indices;  // i_1, ..., i_n (0-based)
    std::vector<SpherePoint> points;   // z_1, ..., z_n

    std::size_t length() const { return points.size(); }
};

/// Inverse-CDF draw on a single uniform variate: returns j with
/// probability b_j and advances the generator state by one step.
inline std::size_t sample_index(const ProbabilityVector& b, SplitMix64& rng) {
    const double u = rng.next_double();
    double acc = 0.0;
    const std::size_t k = b.size();
    for (std::size_t j = 0; j + 1 < k; ++j) {
        acc += b[j];
        if (u < acc) return j;
    }
    return k - 1;
}

/// Runs one chain. `chain_index` selects the derived RNG stream; a single
/// run is chain 0, so an ensemble's first chain reproduces it exactly.
inline RandomOrbit random_backward_orbit(const GeneratorSet& g, const SpherePoint& a,
                                         const ProbabilityVector& b, const ChainConfig& cfg,
                                         std::uint64_t chain_index = 0) {
    cfg.validate();
    if (b.size() != g.size())
        throw std::invalid_argument("random_backward_orbit: weight count mismatch");
    const auto inv = g.inverse_maps();
    SplitMix64 rng(SplitMix64::derive_stream(cfg.rng_seed, chain_index));

    RandomOrbit orbit;
    orbit.seed = a;
    orbit.rng_seed = cfg.rng_seed;
    orbit.chain_index = chain_index;
    orbit.indices.reserve(cfg.length);
    orbit.points.reserve(cfg.length);

    SpherePoint z = a;
    for (std::size_t m = 0; m < cfg.length; ++m) {
        const std::size_t j = sample_index(b, rng);
        z = apply(inv[j], z);
        orbit.indices.push_back(j);
        orbit.points.push_back(z);
    }
    return orbit;
}

/// The empirical (Cesaro) measure of the orbit past the burn-in: uniform
/// weights on z_{burn_in+1}, ..., z_n. With burn_in = 0 this is exactly the
/// chain's occupation measure mu^a_{i_1,...,i_n}.
inline WeightedPointSet empirical_measure(const RandomOrbit& orbit, std::size_t burn_in) {
    if (burn_in >= orbit.length())
        throw std::invalid_argument("empirical_measure: burn_in must be < orbit length");
    const std::size_t n = orbit.length() - burn_in;
    const double w = 1.0 / static_cast<double>(n);
    WeightedPointSet mu;
    auto& atoms = mu.mutable_atoms();
    atoms.reserve(n);
    for (std::size_t m = burn_in; m < orbit.length(); ++m) atoms.push_back({orbit.points[m], w});
    return mu;
}

/// chain_count independent chains on decorrelated streams derived from the
/// master seed.
inline std::vector<RandomOrbit> run_ensemble(const GeneratorSet& g, const SpherePoint& a,
                                             const ProbabilityVector& b, const ChainConfig& cfg) {
    cfg.validate();
    std::vector<RandomOrbit> orbits;
    orbits.reserve(cfg.chain_count);
    for (std::size_t c = 0; c < cfg.chain_count; ++c)
        orbits.push_back(random_backward_orbit(g, a, b, cfg, c));
    return orbits;
}

}  // namespace mobjul
