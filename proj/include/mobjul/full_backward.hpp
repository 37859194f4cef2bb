#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mobjul/errors.hpp"
#include "mobjul/measure.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

inline constexpr std::uint64_t kDefaultAtomBudget = 20'000'000;

/// Configuration of a full backward iteration run. Nonzero coalesce_tol or
/// weight_floor turn the exact measure into a flagged approximation.
struct FullRunConfig {
    std::size_t depth = 0;
    SpherePoint seed;
    double coalesce_tol = 0.0;
    double weight_floor = 0.0;
    std::uint64_t atom_budget = kDefaultAtomBudget;

    void validate() const {
        if (coalesce_tol < 0.0 || weight_floor < 0.0 || weight_floor >= 1.0)
            throw std::invalid_argument("FullRunConfig: invalid tolerances");
        if (atom_budget == 0) throw std::invalid_argument("FullRunConfig: zero budget");
    }
};

struct FullBackwardStats {
    std::size_t atom_count = 0;
    std::uint64_t merged_atoms = 0;   // atoms removed by coalescing
    double dropped_mass = 0.0;        // mass removed by the weight floor
    bool approximate = false;         // coalescing or floor changed the measure
};

struct FullBackwardResult {
    WeightedPointSet measure;
    FullBackwardStats stats;
};

/// One application of the adjoint transition operator T_b* restricted to
/// finitely supported measures: each atom (z, w) is replaced by the k atoms
/// (f_j^{-1}(z), b_j w). Mass is preserved exactly.
inline WeightedPointSet pullback_step(const GeneratorSet& g, const ProbabilityVector& b,
                                      const WeightedPointSet& mu) {
    if (b.size() != g.size())
        throw std::invalid_argument("pullback_step: weight count does not match generators");
    const auto inv = g.inverse_maps();
    WeightedPointSet out;
    auto& atoms = out.mutable_atoms();
    atoms.reserve(mu.size() * g.size());
    for (const auto& atom : mu.atoms())
        for (std::size_t j = 0; j < inv.size(); ++j)
            atoms.push_back({apply(inv[j], atom.point), b[j] * atom.weight});
    return out;
}

/// The measure mu_n^{a,b}: the seed mass pulled back n times through the
/// inverse generators. With coalesce_tol = 0 and weight_floor = 0 the
/// result is exact, k^n atoms counted with multiplicity in lexicographic
/// word order; otherwise a flagged approximation with merge and
/// dropped-mass statistics.
inline FullBackwardResult full_backward_measure(const GeneratorSet& g, const ProbabilityVector& b,
                                                const FullRunConfig& cfg) {
    cfg.validate();
    if (b.size() != g.size())
        throw std::invalid_argument("full_backward_measure: weight count mismatch");
    const double k = static_cast<double>(g.size());

    const bool exact = cfg.coalesce_tol == 0.0 && cfg.weight_floor == 0.0;
    if (exact) {
        // k^depth atoms up front; overflow-safe check in log space.
        const double atoms = std::pow(k, static_cast<double>(cfg.depth));
        if (atoms > static_cast<double>(cfg.atom_budget))
            throw budget_exceeded(
                "full_backward_measure: depth " + std::to_string(cfg.depth) + " needs " +
                std::to_string(atoms) + " atoms, budget is " + std::to_string(cfg.atom_budget) +
                "; enable coalescing");
    }

    const auto inv = g.inverse_maps();
    FullBackwardResult result;
    auto& atoms = result.measure.mutable_atoms();
    atoms = {{cfg.seed, 1.0}};

    for (std::size_t level = 0; level < cfg.depth; ++level) {
        if (static_cast<double>(atoms.size()) * k > static_cast<double>(cfg.atom_budget))
            throw budget_exceeded("full_backward_measure: atom budget exceeded at depth " +
                                  std::to_string(level + 1));
        std::vector<Atom> next;
        next.reserve(atoms.size() * g.size());
        for (const auto& atom : atoms)
            for (std::size_t j = 0; j < inv.size(); ++j)
                next.push_back({apply(inv[j], atom.point), b[j] * atom.weight});
        atoms = std::move(next);

        if (cfg.coalesce_tol > 0.0) {
            const std::size_t before = atoms.size();
            result.measure = coalesce(result.measure, cfg.coalesce_tol);
            result.stats.merged_atoms += before - result.measure.size();
        }
        if (cfg.weight_floor > 0.0) {
            std::vector<Atom> kept;
            kept.reserve(atoms.size());
            double dropped = 0.0;
            for (const auto& a : result.measure.atoms()) {
                if (a.weight < cfg.weight_floor)
                    dropped += a.weight;
                else
                    kept.push_back(a);
            }
            if (kept.empty())
                throw std::invalid_argument("full_backward_measure: weight floor removed all atoms");
            if (dropped > 0.0) {
                const double scale = 1.0 / (1.0 - dropped);
                for (auto& a : kept) a.weight *= scale;
                result.stats.dropped_mass += dropped;
            }
            result.measure.mutable_atoms() = std::move(kept);
        }
    }

    result.stats.atom_count = result.measure.size();
    result.stats.approximate = !exact && (result.stats.merged_atoms > 0 ||
                                          result.stats.dropped_mass > 0.0);
    return result;
}

/// (T phi)(z) = sum_j b_j phi(f_j^{-1} z): the weighted average of phi over
/// the k order-1 preimages of z.
template <typename Phi>
inline double transition_operator_apply(const GeneratorSet& g, const ProbabilityVector& b,
                                        Phi&& phi, const SpherePoint& z) {
    if (b.size() != g.size())
        throw std::invalid_argument("transition_operator_apply: weight count mismatch");
    const auto inv = g.inverse_maps();
    double acc = 0.0;
    for (std::size_t j = 0; j < inv.size(); ++j) acc += b[j] * phi(apply(inv[j], z));
    return acc;
}

}  // namespace mobjul
