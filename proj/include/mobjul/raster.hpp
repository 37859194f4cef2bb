#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mobjul/measure.hpp"
#include "mobjul/sphere.hpp"

namespace mobjul {

enum class ChartMode { dual, window };
enum class Coloring { binary, log_density };

/// How point sets and measures are binned and drawn. The default dual view
/// covers the whole sphere with two unit-disk charts (|z| <= 1 and
/// |1/z| <= 1), so Julia sets through infinity are never clipped; window
/// mode gives a plain rectangular close-up.
struct RenderConfig {
    std::size_t resolution = 1024;
    ChartMode mode = ChartMode::dual;
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;  // window mode only
    Coloring coloring = Coloring::binary;
    double gamma = 2.2;

    void validate() const {
        if (resolution < 16 || resolution > 16384)
            throw std::invalid_argument("RenderConfig: resolution out of [16, 16384]");
        if (mode == ChartMode::window && (!(x1 > x0) || !(y1 > y0)))
            throw std::invalid_argument("RenderConfig: degenerate window");
        if (!(gamma > 0.0)) throw std::invalid_argument("RenderConfig: gamma must be > 0");
    }
};

/// Occupancy/density grids over sphere charts: per-cell accumulated weight.
/// In dual mode every point lands in exactly one cell (|z| <= 1 in the
/// finite chart, everything else through w = 1/z in the second chart, with
/// infinity at the second chart's origin), so total weight equals input
/// mass. In window mode points outside the rectangle are counted as
/// clipped.
class RasterSet {
public:
    RasterSet(const RenderConfig& cfg) : cfg_(cfg) {
        cfg_.validate();
        const std::size_t n = cfg_.resolution * cfg_.resolution;
        grid0_.assign(n, 0.0);
        if (cfg_.mode == ChartMode::dual) grid1_.assign(n, 0.0);
    }

    const RenderConfig& config() const { return cfg_; }
    std::size_t resolution() const { return cfg_.resolution; }
    ChartMode mode() const { return cfg_.mode; }

    void add(const SpherePoint& p, double weight) {
        if (cfg_.mode == ChartMode::dual) {
            if (p.is_finite() && std::norm(p.value()) <= 1.0) {
                grid0_[bin(p.re(), p.im(), -1.0, 1.0, -1.0, 1.0)] += weight;
            } else {
                const Complex w = p.is_infinity() ? Complex(0.0, 0.0) : 1.0 / p.value();
                grid1_[bin(w.real(), w.imag(), -1.0, 1.0, -1.0, 1.0)] += weight;
            }
            return;
        }
        if (p.is_infinity() || p.re() < cfg_.x0 || p.re() > cfg_.x1 || p.im() < cfg_.y0 ||
            p.im() > cfg_.y1) {
            clipped_ += weight;
            return;
        }
        grid0_[bin(p.re(), p.im(), cfg_.x0, cfg_.x1, cfg_.y0, cfg_.y1)] += weight;
    }

    /// Accumulated weight per chart cell; row-major, row 0 at the top
    /// (maximum imaginary part).
    const std::vector<double>& chart(std::size_t which) const {
        if (which == 0) return grid0_;
        if (which == 1 && cfg_.mode == ChartMode::dual) return grid1_;
        throw std::invalid_argument("RasterSet: no such chart");
    }

    std::size_t chart_count() const { return cfg_.mode == ChartMode::dual ? 2 : 1; }

    double total_weight() const {
        double s = 0.0;
        for (double w : grid0_) s += w;
        for (double w : grid1_) s += w;
        return s;
    }

    double clipped_weight() const { return clipped_; }
    bool empty() const { return occupied_count() == 0; }

    std::size_t occupied_count() const {
        std::size_t n = 0;
        for (double w : grid0_) n += w > 0.0;
        for (double w : grid1_) n += w > 0.0;
        return n;
    }

    /// Sphere points at the centers of all occupied cells (the discrete
    /// stand-in for the set being rastered). A chart-1 cell center w maps
    /// back through z = 1/w; the origin cell of chart 1 is infinity.
    std::vector<SpherePoint> occupied_centers() const {
        std::vector<SpherePoint> out;
        const std::size_t r = cfg_.resolution;
        for (std::size_t chart = 0; chart < chart_count(); ++chart) {
            const auto& g = chart == 0 ? grid0_ : grid1_;
            for (std::size_t iy = 0; iy < r; ++iy)
                for (std::size_t ix = 0; ix < r; ++ix) {
                    if (!(g[iy * r + ix] > 0.0)) continue;
                    const Complex c = cell_center(chart, ix, iy);
                    if (chart == 0)
                        out.push_back(SpherePoint(c));
                    else if (iy * r + ix == infinity_cell())
                        out.push_back(SpherePoint::infinity());
                    else
                        out.push_back(SpherePoint(1.0 / c));
                }
        }
        return out;
    }

    /// Upper bound on the chordal diameter of any cell (the chordal metric
    /// never exceeds twice the planar distance).
    double cell_diameter() const {
        const double r = static_cast<double>(cfg_.resolution);
        double hx, hy;
        if (cfg_.mode == ChartMode::dual) {
            hx = hy = 2.0 / r;
        } else {
            hx = (cfg_.x1 - cfg_.x0) / r;
            hy = (cfg_.y1 - cfg_.y0) / r;
        }
        return 2.0 * std::hypot(hx, hy);
    }

    /// Index of the chart-1 cell that w = 0 (the image of infinity) bins
    /// into; its occupied-center representative is infinity itself.
    std::size_t infinity_cell() const { return bin(0.0, 0.0, -1.0, 1.0, -1.0, 1.0); }

    /// Planar center of a cell in its chart's coordinates.
    Complex cell_center(std::size_t chart, std::size_t ix, std::size_t iy) const {
        double ax0, ax1, ay0, ay1;
        if (cfg_.mode == ChartMode::dual) {
            ax0 = ay0 = -1.0;
            ax1 = ay1 = 1.0;
        } else {
            ax0 = cfg_.x0;
            ax1 = cfg_.x1;
            ay0 = cfg_.y0;
            ay1 = cfg_.y1;
        }
        (void)chart;
        const double r = static_cast<double>(cfg_.resolution);
        const double x = ax0 + (static_cast<double>(ix) + 0.5) * (ax1 - ax0) / r;
        const double y = ay1 - (static_cast<double>(iy) + 0.5) * (ay1 - ay0) / r;
        return {x, y};
    }

private:
    RenderConfig cfg_;
    std::vector<double> grid0_;
    std::vector<double> grid1_;
    double clipped_ = 0.0;

    std::size_t bin(double x, double y, double ax0, double ax1, double ay0, double ay1) const {
        const double r = static_cast<double>(cfg_.resolution);
        auto idx = [&](double v, double lo, double hi) {
            double t = (v - lo) / (hi - lo) * r;
            if (t < 0.0) t = 0.0;
            long i = static_cast<long>(t);
            if (i >= static_cast<long>(cfg_.resolution)) i = static_cast<long>(cfg_.resolution) - 1;
            return static_cast<std::size_t>(i);
        };
        const std::size_t ix = idx(x, ax0, ax1);
        // Row 0 at the top: flip the imaginary axis.
        const std::size_t iy = cfg_.resolution - 1 - idx(y, ay0, ay1);
        return iy * cfg_.resolution + ix;
    }
};

inline RasterSet rasterize(const WeightedPointSet& mu, const RenderConfig& cfg) {
    if (mu.empty()) throw std::invalid_argument("rasterize: empty measure");
    RasterSet raster(cfg);
    for (const auto& a : mu.atoms()) raster.add(a.point, a.weight);
    return raster;
}

/// Plain point sets rasterize with unit weight per point.
inline RasterSet rasterize(const std::vector<SpherePoint>& points, const RenderConfig& cfg) {
    if (points.empty()) throw std::invalid_argument("rasterize: empty point set");
    RasterSet raster(cfg);
    for (const auto& p : points) raster.add(p, 1.0);
    return raster;
}

}  // namespace mobjul
