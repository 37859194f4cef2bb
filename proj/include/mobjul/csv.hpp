#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "mobjul/advisor.hpp"
#include "mobjul/diagnostics.hpp"
#include "mobjul/errors.hpp"
#include "mobjul/measure.hpp"
#include "mobjul/random_backward.hpp"
#include "mobjul/semigroup.hpp"

namespace mobjul {

namespace detail {

inline std::ofstream open_artifact(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no platform newline games
    if (!out) throw io_error("cannot open " + path);
    return out;
}

inline std::string csv_point(const SpherePoint& p) {
    char buf[96];
    if (p.is_infinity()) {
        std::snprintf(buf, sizeof buf, "0,0,1");
    } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,0", p.re(), p.im());
    }
    return buf;
}

}  // namespace detail

/// Atom dump: word, re, im, is_infinity, weight. The word column is the
/// lexicographic word of each atom, available only for exact (uncoalesced)
/// full-method runs; otherwise it is left empty.
inline void write_atoms_csv(const std::string& path, const WeightedPointSet& mu,
                            std::size_t generator_count, std::size_t depth, bool exact,
                            const std::string& provenance) {
    auto out = detail::open_artifact(path);
    out << "# " << provenance << "\n";
    out << "word,re,im,is_infinity,weight\n";
    char buf[64];
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const auto& atom = mu.atoms()[i];
        if (exact && generator_count >= 1) {
            // Lexicographic order: the atom index read in base k gives the
            // word digits, most significant first.
            std::string word;
            std::size_t rem = i;
            std::vector<std::size_t> digits(depth, 0);
            for (std::size_t pos = depth; pos-- > 0;) {
                digits[pos] = rem % generator_count;
                rem /= generator_count;
            }
            for (std::size_t pos = 0; pos < depth; ++pos) {
                if (pos) word += '.';
                word += std::to_string(digits[pos] + 1);
            }
            out << word;
        }
        out << ',' << detail::csv_point(atom.point) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", atom.weight);
        out << buf << "\n";
    }
    if (!out) throw io_error("failed writing " + path);
}

/// Orbit dump: step, index, re, im, is_infinity, with the master seed in
/// the provenance comment.
inline void write_orbit_csv(const std::string& path, const RandomOrbit& orbit,
                            const std::string& provenance) {
    auto out = detail::open_artifact(path);
    out << "# " << provenance << " master_seed=" << orbit.rng_seed
        << " chain_index=" << orbit.chain_index << "\n";
    out << "step,index,re,im,is_infinity\n";
    for (std::size_t m = 0; m < orbit.length(); ++m)
        out << (m + 1) << ',' << (orbit.indices[m] + 1) << ','
            << detail::csv_point(orbit.points[m]) << "\n";
    if (!out) throw io_error("failed writing " + path);
}

/// Fixed-point cloud dump: word, re, im, is_infinity.
inline void write_cloud_csv(const std::string& path, const FixedPointCloud& cloud,
                            const std::string& provenance) {
    auto out = detail::open_artifact(path);
    out << "# " << provenance << " words_total=" << cloud.words_total
        << " identity=" << cloud.identity_words << " parabolic=" << cloud.parabolic_words
        << " elliptic=" << cloud.elliptic_words << "\n";
    out << "word,re,im,is_infinity\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i)
        out << cloud.words[i].to_string() << ',' << detail::csv_point(cloud.points[i]) << "\n";
    if (!out) throw io_error("failed writing " + path);
}

/// Beta-scan heatmap rows.
inline void write_betascan_csv(const std::string& path, const std::vector<BetaScanRow>& rows,
                               const BetaScanConfig& cfg) {
    auto out = detail::open_artifact(path);
    out << "beta_re,beta_im,hausdorff,equal_flag,chain_len,raster_res,master_seed\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,", row.beta.real(), row.beta.imag(),
                      row.hausdorff, row.equal_flag ? 1 : 0);
        out << buf << cfg.chain.length << ',' << cfg.raster_resolution << ',' << row.derived_seed
            << "\n";
    }
    if (!out) throw io_error("failed writing " + path);
}

inline void write_report_files(const std::string& text_path, const std::string& csv_path,
                               const ConvergenceReport& report) {
    {
        auto out = detail::open_artifact(text_path);
        report.write_text(out);
        if (!out) throw io_error("failed writing " + text_path);
    }
    {
        auto out = detail::open_artifact(csv_path);
        report.write_csv(out);
        if (!out) throw io_error("failed writing " + csv_path);
    }
}

}  // namespace mobjul
