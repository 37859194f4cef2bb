#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mobjul/sphere.hpp"

namespace mobjul {

struct Atom {
    SpherePoint point;
    double weight = 0.0;
};

/// A finitely supported probability measure: atoms with positive weights
/// summing to 1. Duplicate positions are allowed until coalesce() merges
/// them.
class WeightedPointSet {
public:
    WeightedPointSet() = default;

    explicit WeightedPointSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) { validate(); }

    static WeightedPointSet dirac(const SpherePoint& p) {
        WeightedPointSet m;
        m.atoms_.push_back({p, 1.0});
        return m;
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.weight;
        return s;
    }

    std::vector<SpherePoint> support() const {
        std::vector<SpherePoint> pts;
        pts.reserve(atoms_.size());
        for (const auto& a : atoms_) pts.push_back(a.point);
        return pts;
    }

    void validate() const {
        for (const auto& a : atoms_)
            if (!(a.weight > 0.0))
                throw std::invalid_argument("WeightedPointSet: weights must be > 0");
        if (std::abs(total_mass() - 1.0) >= 1e-9)
            throw std::invalid_argument("WeightedPointSet: mass must be 1");
    }

    /// Unchecked access for builders that restore the mass invariant later.
    std::vector<Atom>& mutable_atoms() { return atoms_; }

private:
    std::vector<Atom> atoms_;
};

namespace detail {

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t v : {static_cast<std::uint64_t>(k.x), static_cast<std::uint64_t>(k.y),
                                static_cast<std::uint64_t>(k.z)}) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline CellKey cell_of(const std::array<double, 3>& e, double h) {
    return {static_cast<std::int64_t>(std::floor(e[0] / h)),
            static_cast<std::int64_t>(std::floor(e[1] / h)),
            static_cast<std::int64_t>(std::floor(e[2] / h))};
}

}  // namespace detail

/// Greedy merge of atoms within chordal distance tol of an earlier atom
/// (the cluster anchor). The merged atom sits at the weight-averaged point
/// in the finite chart; infinity only merges with infinity. Total mass is
/// unchanged and the result is deterministic given the atom order.
inline WeightedPointSet coalesce(const WeightedPointSet& mu, double tol) {
    if (tol < 0.0) throw std::invalid_argument("coalesce: tol must be >= 0");

    struct Cluster {
        std::array<double, 3> anchor{};  // sphere embedding of the first member
        bool infinite = false;
        Complex weighted_sum{};
        double weight = 0.0;
    };
    std::vector<Cluster> clusters;
    clusters.reserve(mu.size());

    // Chordal distance equals Euclidean distance between sphere embeddings,
    // so a uniform grid with cell size tol makes the anchor search exact.
    const double h = tol > 0.0 ? tol : 1.0;
    std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellKeyHash> grid;
    long inf_cluster = -1;

    for (const auto& atom : mu.atoms()) {
        if (atom.point.is_infinity()) {
            if (inf_cluster < 0) {
                inf_cluster = static_cast<long>(clusters.size());
                clusters.push_back({{0.0, 0.0, 1.0}, true, Complex(0.0, 0.0), 0.0});
            }
            clusters[static_cast<std::size_t>(inf_cluster)].weight += atom.weight;
            continue;
        }
        const auto e = embed3(atom.point);
        long target = -1;
        if (tol > 0.0) {
            const auto base = detail::cell_of(e, h);
            for (std::int64_t dx = -1; dx <= 1 && target < 0; ++dx)
                for (std::int64_t dy = -1; dy <= 1 && target < 0; ++dy)
                    for (std::int64_t dz = -1; dz <= 1 && target < 0; ++dz) {
                        const auto it = grid.find({base.x + dx, base.y + dy, base.z + dz});
                        if (it == grid.end()) continue;
                        for (std::size_t ci : it->second) {
                            const auto& c = clusters[ci];
                            if (c.infinite) continue;
                            const double d2 = (e[0] - c.anchor[0]) * (e[0] - c.anchor[0]) +
                                              (e[1] - c.anchor[1]) * (e[1] - c.anchor[1]) +
                                              (e[2] - c.anchor[2]) * (e[2] - c.anchor[2]);
                            if (d2 <= tol * tol) {
                                target = static_cast<long>(ci);
                                break;
                            }
                        }
                    }
        } else {
            const auto it = grid.find(detail::cell_of(e, h));
            if (it != grid.end()) {
                for (std::size_t ci : it->second) {
                    const auto& c = clusters[ci];
                    if (!c.infinite && c.anchor == e) {
                        target = static_cast<long>(ci);
                        break;
                    }
                }
            }
        }
        if (target < 0) {
            target = static_cast<long>(clusters.size());
            clusters.push_back({e, false, Complex(0.0, 0.0), 0.0});
            grid[detail::cell_of(e, h)].push_back(static_cast<std::size_t>(target));
        }
        auto& c = clusters[static_cast<std::size_t>(target)];
        c.weighted_sum += atom.weight * atom.point.value();
        c.weight += atom.weight;
    }

    std::vector<Atom> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
        if (c.infinite)
            out.push_back({SpherePoint::infinity(), c.weight});
        else
            out.push_back({SpherePoint(c.weighted_sum / c.weight), c.weight});
    }
    WeightedPointSet result;
    result.mutable_atoms() = std::move(out);
    return result;
}

}  // namespace mobjul
