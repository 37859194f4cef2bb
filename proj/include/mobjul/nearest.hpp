#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mobjul/sphere.hpp"

namespace mobjul {

/// Nearest-neighbor index over a fixed point set, in the chordal metric.
/// Works on the R^3 sphere embedding, where chordal distance is plain
/// Euclidean distance, via a kd-tree; exact, and cheap to query repeatedly
/// (orbit statistics run millions of queries against raster supports).
class PointSetIndex {
public:
    explicit PointSetIndex(const std::vector<SpherePoint>& points) {
        if (points.empty()) throw std::invalid_argument("PointSetIndex: empty set");
        pts_.reserve(points.size());
        for (const auto& p : points) pts_.push_back(embed3(p));
        order_.resize(pts_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        axis_.assign(pts_.size(), 0);
        build(0, pts_.size());
    }

    std::size_t size() const { return pts_.size(); }

    /// Chordal distance from p to the nearest indexed point.
    double distance(const SpherePoint& p) const {
        return std::sqrt(nearest_sq(embed3(p), kNoCutoff));
    }

    /// Like distance(), but may return early with any value <= cutoff once
    /// a point that close has been found (the exact minimum is then not
    /// needed by the caller).
    double distance_at_most(const SpherePoint& p, double cutoff) const {
        return std::sqrt(nearest_sq(embed3(p), cutoff * cutoff));
    }

private:
    static constexpr double kNoCutoff = -1.0;

    std::vector<std::array<double, 3>> pts_;
    std::vector<std::size_t> order_;  // kd-tree as a permutation, median layout
    std::vector<std::uint8_t> axis_;  // split axis per subrange midpoint

    void build(std::size_t lo, std::size_t hi) {
        if (hi - lo <= 1) return;
        std::array<double, 3> mins{1e99, 1e99, 1e99}, maxs{-1e99, -1e99, -1e99};
        for (std::size_t i = lo; i < hi; ++i)
            for (int ax = 0; ax < 3; ++ax) {
                mins[ax] = std::min(mins[ax], pts_[order_[i]][ax]);
                maxs[ax] = std::max(maxs[ax], pts_[order_[i]][ax]);
            }
        int ax = 0;
        for (int c = 1; c < 3; ++c)
            if (maxs[c] - mins[c] > maxs[ax] - mins[ax]) ax = c;
        const std::size_t mid = (lo + hi) / 2;
        std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return pts_[a][ax] < pts_[b][ax]; });
        axis_[mid] = static_cast<std::uint8_t>(ax);
        build(lo, mid);
        build(mid + 1, hi);
    }

    double nearest_sq(const std::array<double, 3>& q, double cutoff_sq) const {
        double best = 1e99;
        search(q, 0, pts_.size(), best, cutoff_sq);
        return best;
    }

    void search(const std::array<double, 3>& q, std::size_t lo, std::size_t hi, double& best,
                double cutoff_sq) const {
        if (lo >= hi) return;
        if (cutoff_sq >= 0.0 && best <= cutoff_sq) return;
        const std::size_t mid = (lo + hi) / 2;
        const auto& p = pts_[order_[mid]];
        const double d2 = (q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]) +
                          (q[2] - p[2]) * (q[2] - p[2]);
        if (d2 < best) best = d2;
        if (hi - lo == 1) return;
        const int ax = axis_[mid];
        const double delta = q[ax] - p[ax];
        if (delta < 0.0) {
            search(q, lo, mid, best, cutoff_sq);
            if (delta * delta < best) search(q, mid + 1, hi, best, cutoff_sq);
        } else {
            search(q, mid + 1, hi, best, cutoff_sq);
            if (delta * delta < best) search(q, lo, mid, best, cutoff_sq);
        }
    }
};

}  // namespace mobjul
