#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mobjul/errors.hpp"
#include "mobjul/moebius.hpp"
#include "mobjul/sphere.hpp"

namespace mobjul {

/// A finitely generated Moebius semigroup, fixed generating set included.
/// Index j in {0, ..., k-1} is the symbol alphabet; order is significant.
class GeneratorSet {
public:
    GeneratorSet(std::vector<MoebiusMap> maps, std::vector<std::string> labels)
        : maps_(std::move(maps)), labels_(std::move(labels)) {
        if (maps_.empty()) throw std::invalid_argument("GeneratorSet: needs k >= 1 generators");
        if (labels_.size() != maps_.size())
            throw std::invalid_argument("GeneratorSet: label count mismatch");
    }

    explicit GeneratorSet(std::vector<MoebiusMap> maps) : maps_(std::move(maps)) {
        if (maps_.empty()) throw std::invalid_argument("GeneratorSet: needs k >= 1 generators");
        labels_.reserve(maps_.size());
        for (std::size_t j = 0; j < maps_.size(); ++j)
            labels_.push_back("f" + std::to_string(j + 1));
    }

    std::size_t size() const { return maps_.size(); }
    const MoebiusMap& map(std::size_t j) const { return maps_.at(j); }
    const std::string& label(std::size_t j) const { return labels_.at(j); }
    const std::vector<MoebiusMap>& maps() const { return maps_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Inverses of all generators, precomputed once for the hot paths.
    std::vector<MoebiusMap> inverse_maps() const {
        std::vector<MoebiusMap> inv;
        inv.reserve(maps_.size());
        for (const auto& m : maps_) inv.push_back(inverse(m));
        return inv;
    }

private:
    std::vector<MoebiusMap> maps_;
    std::vector<std::string> labels_;
};

/// The semigroup generated by the inverses of the generators, same order.
/// Involutive, including the label decoration.
inline GeneratorSet inverse_semigroup(const GeneratorSet& g) {
    std::vector<std::string> labels;
    labels.reserve(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        std::string l = g.label(j);
        if (!l.empty() && l.back() == '\'')
            l.pop_back();
        else
            l += '\'';
        labels.push_back(std::move(l));
    }
    return GeneratorSet(g.inverse_maps(), std::move(labels));
}

/// Weights b = (b_1, ..., b_k): all positive, summing to 1.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> b) : b_(std::move(b)) {
        if (b_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
        double sum = 0.0;
        for (double w : b_) {
            if (!(w > 0.0)) throw std::invalid_argument("ProbabilityVector: weights must be > 0");
            sum += w;
        }
        if (std::abs(sum - 1.0) >= 1e-12)
            throw std::invalid_argument("ProbabilityVector: weights must sum to 1");
    }

    static ProbabilityVector uniform(std::size_t k) {
        if (k == 0) throw std::invalid_argument("ProbabilityVector: k = 0");
        return ProbabilityVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
    }

    std::size_t size() const { return b_.size(); }
    double operator[](std::size_t j) const { return b_.at(j); }
    const std::vector<double>& values() const { return b_; }

private:
    std::vector<double> b_;
};

/// A finite word (i_1, ..., i_n) over the generator alphabet, 0-based.
struct Word {
    std::vector<std::size_t> indices;

    std::size_t length() const { return indices.size(); }

    void validate(const GeneratorSet& g) const {
        for (std::size_t i : indices)
            if (i >= g.size()) throw std::invalid_argument("Word: index out of range");
    }

    /// Human-readable 1-based form, e.g. "1.2.2".
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(indices[i] + 1);
        }
        return s;
    }
};

/// z_{i_1,...,i_n} = f^{-1}_{i_n} o ... o f^{-1}_{i_1}(a): the inverse of
/// the first letter is applied first. Evaluated by incremental point
/// application, which stays bounded where long word matrices would not.
inline SpherePoint evaluate_backward_word(const GeneratorSet& g, const Word& w,
                                          const SpherePoint& a) {
    w.validate(g);
    const auto inv = g.inverse_maps();
    SpherePoint z = a;
    for (std::size_t i : w.indices) z = apply(inv[i], z);
    return z;
}

/// Caruso semigroup S_beta = < beta + 1/z, -beta + 1/z >, beta != 0.
inline GeneratorSet caruso(Complex beta) {
    if (std::abs(beta) == 0.0) throw std::invalid_argument("caruso: beta must be nonzero");
    return GeneratorSet({MoebiusMap(beta, 1.0, 1.0, 0.0), MoebiusMap(-beta, 1.0, 1.0, 0.0)},
                        {"f", "g"});
}

/// <e^{2 pi i theta} z>: a single elliptic (or identity) rotation.
inline GeneratorSet rotation(double theta) {
    const double ang = 2.0 * 3.14159265358979323846 * theta;
    return GeneratorSet({MoebiusMap(Complex(std::cos(ang), std::sin(ang)), 0.0, 0.0, 1.0)},
                        {"r"});
}

/// <2z, z/2>: the pair with {0, inf} in the kernel Julia set of the inverse
/// semigroup, on which both drawing methods legitimately degenerate.
inline GeneratorSet dilation_pair() {
    return GeneratorSet({MoebiusMap::scaling(2.0), MoebiusMap::scaling(0.5)}, {"f1", "f2"});
}

/// <2z, h> with h(z) = z/(2 - z): h fixes 0 (attracting, h'(0) = 1/2) and
/// 1 (repelling, h'(1) = 2), giving E(G) meet J(G) = {0}.
inline GeneratorSet mixed_exceptional() {
    return GeneratorSet({MoebiusMap::scaling(2.0), MoebiusMap(1.0, 0.0, -1.0, 2.0)},
                        {"f1", "h"});
}

/// Two parabolic automorphisms of the unit disk fixing 1 and -1, the shipped
/// default for the disk construction: the parabolic fixed points lie in
/// J(G) and J(G^-1) simultaneously.
inline GeneratorSet disk_parabolic_pair() {
    const Complex i(0.0, 1.0);
    return GeneratorSet({MoebiusMap(1.0 + i, -i, i, 1.0 - i), MoebiusMap(1.0 + i, i, -i, 1.0 - i)},
                        {"p", "q"});
}

/// Appends f_{k+1}(z) = a z with |a| > 1 to an existing generator set.
inline GeneratorSet disk_extension(const GeneratorSet& g, Complex a) {
    if (!(std::abs(a) > 1.0)) throw std::invalid_argument("disk_extension: need |a| > 1");
    auto maps = g.maps();
    auto labels = g.labels();
    maps.push_back(MoebiusMap::scaling(a));
    labels.push_back("f" + std::to_string(maps.size()));
    return GeneratorSet(std::move(maps), std::move(labels));
}

// ---------------------------------------------------------------------------
// Definition file format
//
//   # comment
//   k 2
//   generator f   2 0   1 0   1 0   0 0     (label, then a b c d as re im)
//   generator g  -2 0   1 0   1 0   0 0
//   weights 0.5 0.5                          (optional; default uniform)
// ---------------------------------------------------------------------------

struct SemigroupDefinition {
    GeneratorSet generators;
    ProbabilityVector weights;
};

inline SemigroupDefinition parse_semigroup_definition(std::istream& in) {
    std::size_t k = 0;
    std::vector<MoebiusMap> maps;
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        const auto fail = [&](const std::string& what) {
            throw std::invalid_argument("semigroup definition line " + std::to_string(lineno) +
                                        ": " + what);
        };
        if (key == "k") {
            if (!(ls >> k) || k == 0) fail("expected k >= 1");
        } else if (key == "generator") {
            std::string label;
            double v[8];
            if (!(ls >> label)) fail("expected generator label");
            for (double& x : v)
                if (!(ls >> x)) fail("expected 8 numbers (a b c d as re im pairs)");
            maps.emplace_back(Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]),
                              Complex(v[6], v[7]));
            labels.push_back(label);
        } else if (key == "weights") {
            double w;
            while (ls >> w) weights.push_back(w);
            if (weights.empty()) fail("expected at least one weight");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (maps.empty()) throw std::invalid_argument("semigroup definition: no generators");
    if (k != 0 && k != maps.size())
        throw std::invalid_argument("semigroup definition: k does not match generator count");
    GeneratorSet g(std::move(maps), std::move(labels));
    if (weights.empty()) return {g, ProbabilityVector::uniform(g.size())};
    if (weights.size() != g.size())
        throw std::invalid_argument("semigroup definition: weight count does not match k");
    return {g, ProbabilityVector(std::move(weights))};
}

inline SemigroupDefinition load_semigroup_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open semigroup definition: " + path);
    return parse_semigroup_definition(in);
}

inline void write_semigroup_definition(std::ostream& out, const SemigroupDefinition& def) {
    out << "k " << def.generators.size() << "\n";
    char buf[256];
    for (std::size_t j = 0; j < def.generators.size(); ++j) {
        const auto& m = def.generators.map(j);
        std::snprintf(buf, sizeof buf, "generator %s  %.17g %.17g  %.17g %.17g  %.17g %.17g  %.17g %.17g\n",
                      def.generators.label(j).c_str(), m.a().real(), m.a().imag(), m.b().real(),
                      m.b().imag(), m.c().real(), m.c().imag(), m.d().real(), m.d().imag());
        out << buf;
    }
    out << "weights";
    for (double w : def.weights.values()) {
        std::snprintf(buf, sizeof buf, " %.17g", w);
        out << buf;
    }
    out << "\n";
}

}  // namespace mobjul
