#pragma once

// Locale-independent CSV output for evaluation tables, speed sweeps and
// scans. Numbers are written with 17 significant digits so files round-trip.

#include <charconv>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "polcorr/bell.hpp"
#include "polcorr/correlations.hpp"

namespace polcorr
{

inline std::string format_double(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc{})
        return "nan";
    return std::string(buf, res.ptr);
}

struct EvalRow
{
    double chi1{0};  //!< radians
    double chi2{0};
    double joint{0};
    double first{0};
    double second{0};
};

/// One row per (chi1, chi2) pair, values straight from the closed forms.
inline std::vector<EvalRow> evaluate_pairs(Scenario scenario, Speed speed,
                                           std::span<double const> chi1,
                                           std::span<double const> chi2)
{
    if (chi1.size() != chi2.size())
        throw DomainError("chi1 and chi2 lists must have equal length");
    std::vector<EvalRow> rows;
    rows.reserve(chi1.size());
    for (std::size_t i = 0; i < chi1.size(); ++i)
    {
        rows.push_back({chi1[i], chi2[i], joint(scenario, speed, chi1[i], chi2[i]),
                        marginal(scenario, speed, Detector::first, chi1[i]),
                        marginal(scenario, speed, Detector::second, chi2[i])});
    }
    return rows;
}

inline std::string eval_csv(std::span<EvalRow const> rows)
{
    std::string out = "chi1,chi2,p_joint,p_marg1,p_marg2\n";
    for (auto const& r : rows)
    {
        out += format_double(radians_to_degrees(r.chi1)) + ',' +
               format_double(radians_to_degrees(r.chi2)) + ',' + format_double(r.joint) +
               ',' + format_double(r.first) + ',' + format_double(r.second) + '\n';
    }
    return out;
}

inline std::string sweep_csv(std::span<SweepRow const> rows)
{
    std::string out = "beta,s,violated,margin\n";
    for (auto const& r : rows)
    {
        out += format_double(r.beta) + ',' + format_double(r.result.s) + ',' +
               (r.result.violated ? "true" : "false") + ',' +
               format_double(r.result.margin) + '\n';
    }
    return out;
}

/// Angles are written in degrees.
inline std::string scan_csv(ScanReport const& report)
{
    std::string out = "beta,best_s,chi1,chi2,chi1p,chi2p,margin\n";
    for (auto const& p : report.points)
    {
        out += format_double(p.beta) + ',' + format_double(p.result.s) + ',' +
               format_double(radians_to_degrees(p.angles.chi1)) + ',' +
               format_double(radians_to_degrees(p.angles.chi2)) + ',' +
               format_double(radians_to_degrees(p.angles.chi1p)) + ',' +
               format_double(radians_to_degrees(p.angles.chi2p)) + ',' +
               format_double(p.result.margin) + '\n';
    }
    return out;
}

} // namespace polcorr
