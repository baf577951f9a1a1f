// Adjudication report rendering: aligned text for humans, JSON for machines.
// Floats are rounded to 12 significant digits in both forms; exact counts
// are emitted as decimal integers (strings when beyond 64 bits).

#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "adjudicator.hpp"
#include "json.hpp"

namespace disten {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// double carrying the 12-significant-digit rounding, for JSON payloads
inline double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

inline nlohmann::json report_json(const AdjudicationReport& rep) {
    nlohmann::json j;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : rep.samples)
        j["samples"].push_back({{"N", s.N},
                                {"E2", to_string(s.e2)},
                                {"ratio_N3logN", round12(s.ratio)}});
    j["fit"] = {{"a", round12(rep.fit.a)},
                {"b", round12(rep.fit.b)},
                {"max_rel_residual", round12(rep.fit.max_rel_residual)},
                {"rms_rel_residual", round12(rep.fit.rms_rel_residual)}};
    j["ranking"] = nlohmann::json::array();
    for (const auto& r : rep.ranking)
        j["ranking"].push_back({{"label", r.candidate.label},
                                {"value", round12(r.candidate.value)},
                                {"distance", round12(r.distance)}});
    j["constants"] = nlohmann::json::array();
    for (const auto& c : rep.constants)
        j["constants"].push_back({{"label", c.label},
                                  {"value", round12(c.value)},
                                  {"provenance", c.provenance}});
    j["slow_convergence"] = nlohmann::json::array();
    for (const auto& row : rep.slow_convergence)
        j["slow_convergence"].push_back({{"N", row.N},
                                         {"sum", round12(row.sum)},
                                         {"prediction", round12(row.prediction)},
                                         {"ratio", round12(row.ratio)}});
    return j;
}

inline std::string report_text(const AdjudicationReport& rep) {
    std::ostringstream os;
    char line[160];

    os << "exact samples\n";
    std::snprintf(line, sizeof line, "  %12s %26s %16s\n", "N", "E2", "E2/(N^3 ln N)");
    os << line;
    for (const auto& s : rep.samples) {
        std::snprintf(line, sizeof line, "  %12llu %26s %16s\n",
                      static_cast<unsigned long long>(s.N), to_string(s.e2).c_str(),
                      fmt12(s.ratio).c_str());
        os << line;
    }

    std::snprintf(line, sizeof line,
                  "\ntwo-term fit  E2 = a N^3 ln N + b N^3\n  a = %s   b = %s"
                  "   max|rel residual| = %s   rms = %s\n",
                  fmt12(rep.fit.a).c_str(), fmt12(rep.fit.b).c_str(),
                  fmt12(rep.fit.max_rel_residual).c_str(),
                  fmt12(rep.fit.rms_rel_residual).c_str());
    os << line;

    os << "\ncandidate ranking (distance from fitted a; no candidate is declared true)\n";
    for (const auto& r : rep.ranking) {
        std::snprintf(line, sizeof line, "  %-18s %16s   distance %s\n",
                      r.candidate.label.c_str(), fmt12(r.candidate.value).c_str(),
                      fmt12(r.distance).c_str());
        os << line;
    }

    os << "\nall constants\n";
    for (const auto& c : rep.constants) {
        std::snprintf(line, sizeof line, "  %-18s %16s   [%s]\n", c.label.c_str(),
                      fmt12(c.value).c_str(), c.provenance.c_str());
        os << line;
    }

    if (!rep.slow_convergence.empty()) {
        os << "\nslow convergence of the term1 inner sum (ratio to its limit law)\n";
        std::snprintf(line, sizeof line, "  %12s %18s %18s %12s\n", "N", "sum",
                      "prediction", "ratio");
        os << line;
        for (const auto& row : rep.slow_convergence) {
            std::snprintf(line, sizeof line, "  %12llu %18s %18s %12s\n",
                          static_cast<unsigned long long>(row.N), fmt12(row.sum).c_str(),
                          fmt12(row.prediction).c_str(), fmt12(row.ratio).c_str());
            os << line;
        }
    }
    return os.str();
}

} // namespace disten
