#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mobjul {

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// One executed check: the measured statistic against its tolerance, with
/// enough metadata (seeds, depths, chain lengths) to reproduce it.
struct CheckResult {
    std::string name;
    double statistic = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool heuristic = false;
    std::string note;
    std::vector<std::pair<std::string, std::string>> metadata;
};

struct ConvergenceReport {
    std::string title;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void write_text(std::ostream& out) const {
        out << "report: " << title << "\n";
        for (const auto& [k, v] : metadata) out << "  " << k << " = " << v << "\n";
        for (const auto& c : checks) {
            out << (c.passed ? "  [pass] " : "  [FAIL] ") << c.name
                << "  statistic=" << detail::format_double(c.statistic)
                << "  tolerance=" << detail::format_double(c.tolerance);
            if (c.heuristic) out << "  heuristic=true";
            if (!c.note.empty()) out << "  (" << c.note << ")";
            out << "\n";
            for (const auto& [k, v] : c.metadata) out << "      " << k << " = " << v << "\n";
        }
        out << (all_passed() ? "result: all checks passed\n" : "result: FAILURES present\n");
    }

    void write_csv(std::ostream& out) const {
        out << "name,statistic,tolerance,passed,heuristic,note\n";
        for (const auto& c : checks) {
            std::string note = c.note;
            for (auto& ch : note)
                if (ch == ',') ch = ';';
            out << c.name << ',' << detail::format_double(c.statistic) << ','
                << detail::format_double(c.tolerance) << ',' << (c.passed ? 1 : 0) << ','
                << (c.heuristic ? 1 : 0) << ',' << note << "\n";
        }
    }
};

}  // namespace mobjul
