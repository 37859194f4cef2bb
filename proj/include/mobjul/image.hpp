#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "mobjul/errors.hpp"
#include "mobjul/raster.hpp"

namespace mobjul {

namespace detail {

inline void shade(const std::vector<double>& grid, Coloring coloring, double gamma,
                  std::vector<std::uint8_t>& out) {
    if (coloring == Coloring::binary) {
        for (double w : grid) out.push_back(w > 0.0 ? 255 : 0);
        return;
    }
    double wmin = 0.0, wmax = 0.0;
    for (double w : grid) {
        if (w <= 0.0) continue;
        if (wmin == 0.0 || w < wmin) wmin = w;
        if (w > wmax) wmax = w;
    }
    const double span = (wmax > wmin) ? std::log(wmax / wmin) : 0.0;
    for (double w : grid) {
        if (!(w > 0.0)) {
            out.push_back(0);
            continue;
        }
        const double t = span > 0.0 ? std::log(w / wmin) / span : 1.0;
        // Lowest occupied weight still renders visibly above the background.
        const double v = 0.25 + 0.75 * std::pow(t, 1.0 / gamma);
        out.push_back(static_cast<std::uint8_t>(std::lround(255.0 * v)));
    }
}

}  // namespace detail

/// Writes the raster as a binary portable graymap (P5), 8-bit, row-major,
/// top-left origin. Dual-chart rasters emit the two charts side by side
/// (finite chart left). Identical rasters produce byte-identical files;
/// the optional comment goes into the header verbatim.
inline void write_image(const RasterSet& raster, const std::string& path,
                        const std::string& comment = "") {
    const std::size_t r = raster.resolution();
    const std::size_t width = raster.chart_count() * r;
    const auto& cfg = raster.config();

    std::vector<std::uint8_t> shade0, shade1;
    shade0.reserve(r * r);
    detail::shade(raster.chart(0), cfg.coloring, cfg.gamma, shade0);
    if (raster.chart_count() == 2) {
        shade1.reserve(r * r);
        detail::shade(raster.chart(1), cfg.coloring, cfg.gamma, shade1);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("write_image: cannot open " + path);
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << "\n";
    out << width << " " << r << "\n255\n";
    std::vector<std::uint8_t> row(width);
    for (std::size_t iy = 0; iy < r; ++iy) {
        for (std::size_t ix = 0; ix < r; ++ix) row[ix] = shade0[iy * r + ix];
        if (raster.chart_count() == 2)
            for (std::size_t ix = 0; ix < r; ++ix) row[r + ix] = shade1[iy * r + ix];
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(width));
    }
    if (!out) throw io_error("write_image: failed writing " + path);
}

}  // namespace mobjul
