#pragma once

// The Clauser–Horne combination S, the local-hidden-variable bound
// -1 <= S <= 0, and a deterministic search for violating settings.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "polcorr/correlations.hpp"
#include "polcorr/errors.hpp"
#include "polcorr/kinematics.hpp"
#include "polcorr/nelder_mead.hpp"

namespace polcorr
{

/// Guard band on the violation predicate.
inline constexpr double kViolationGuard = 1e-12;

inline double normalize_angle(double a)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0)
        r += two_pi;
    if (r >= two_pi)
        r = 0;
    return r;
}

inline constexpr double degrees_to_radians(double deg)
{
    return deg * std::numbers::pi / 180.0;
}

inline constexpr double radians_to_degrees(double rad)
{
    return rad * 180.0 / std::numbers::pi;
}

/// Measurement directions (chi1, chi2) and the alternatives (chi1', chi2').
struct BellAngles
{
    double chi1{0};
    double chi2{0};
    double chi1p{0};
    double chi2p{0};

    BellAngles normalized() const
    {
        return {normalize_angle(chi1), normalize_angle(chi2),
                normalize_angle(chi1p), normalize_angle(chi2p)};
    }

    static BellAngles from_degrees(double c1, double c2, double c1p, double c2p)
    {
        return {degrees_to_radians(c1), degrees_to_radians(c2),
                degrees_to_radians(c1p), degrees_to_radians(c2p)};
    }

    friend bool operator==(BellAngles const&, BellAngles const&) = default;
};

struct BellSettings
{
    Scenario scenario;
    Speed speed;
    BellAngles angles;

    BellSettings(Scenario sc, Speed sp, BellAngles const& a)
        : scenario(sc), speed(sp), angles(a.normalized())
    {
    }
};

struct BellResult
{
    double s{0};
    bool violated{false};
    double margin{0};  //!< distance of S outside [-1, 0], zero inside
};

inline BellResult classify(double s)
{
    double const margin = std::max({s, -1.0 - s, 0.0});
    bool const violated = s > kViolationGuard || s < -1.0 - kViolationGuard;
    return {s, violated, margin};
}

/// Signed distance to the LHV interval; positive outside, negative inside.
inline double signed_distance(double s)
{
    return std::max(s, -1.0 - s);
}

/*!
 * S = P[c1,c2] - P[c1,c2'] + P[c1',c2] + P[c1',c2'] - P[c1',-] - P[-,c2]
 * for arbitrary probability callables.
 */
template<class Joint, class First, class Second>
double ch_functional(Joint&& p, First&& first, Second&& second, BellAngles const& a)
{
    return p(a.chi1, a.chi2) - p(a.chi1, a.chi2p) + p(a.chi1p, a.chi2)
           + p(a.chi1p, a.chi2p) - first(a.chi1p) - second(a.chi2);
}

inline double s_functional(Scenario scenario, Speed speed, BellAngles const& a)
{
    return ch_functional(
        [&](double x, double y) { return joint(scenario, speed, x, y); },
        [&](double x) { return marginal(scenario, speed, Detector::first, x); },
        [&](double y) { return marginal(scenario, speed, Detector::second, y); },
        a);
}

inline BellResult s_value(BellSettings const& settings)
{
    return classify(s_functional(settings.scenario, settings.speed, settings.angles));
}

//---------------------------------------------------------------------------//
/*!
 * Exhaustive check of the LHV bound over the 16 deterministic strategies.
 *
 * Each strategy fixes the outcome (detected = 1, not = 0) of detector 1 at
 * chi1, chi1' and detector 2 at chi2, chi2'; joint probabilities are
 * products and single probabilities are the outcomes themselves.
 */
struct LhvReport
{
    std::array<double, 16> values{};
    double min{0};
    double max{0};
    bool passed{false};
};

inline LhvReport lhv_bound_check()
{
    LhvReport r;
    r.min = 1e300;
    r.max = -1e300;
    // Angles are only labels here: 0, 1 for detector 1 and 2, 3 for detector 2.
    BellAngles const labels{0.0, 2.0, 1.0, 3.0};
    for (unsigned strategy = 0; strategy < 16; ++strategy)
    {
        auto outcome = [strategy](double label) {
            return static_cast<double>((strategy >> static_cast<unsigned>(label)) & 1u);
        };
        double const s = ch_functional(
            [&](double x, double y) { return outcome(x) * outcome(y); },
            outcome, outcome, labels);
        r.values[strategy] = s;
        r.min = std::min(r.min, s);
        r.max = std::max(r.max, s);
    }
    bool inside = true;
    for (double s : r.values)
        inside = inside && s >= -1.0 && s <= 0.0;
    r.passed = inside && r.min == -1.0 && r.max == 0.0;
    return r;
}

//---------------------------------------------------------------------------//
// Scan
//---------------------------------------------------------------------------//
struct ScanOptions
{
    double coarse_step{degrees_to_radians(3.0)};
    bool refine{true};
    unsigned threads{0};  //!< 0: POLCORR_THREADS or hardware concurrency
};

struct ScanPoint
{
    double beta{0};
    BellAngles angles;        //!< best settings found
    BellResult result;        //!< S at `angles`
    BellAngles coarse_angles; //!< best grid settings
    BellResult coarse;        //!< S at the best grid settings
};

struct ScanReport
{
    Scenario scenario{Scenario::MollerPolarizedTheta0};
    std::vector<ScanPoint> points;  //!< ascending beta
    /// Longest run of consecutive grid speeds with a violation found. A
    /// lower bound on the true violation set.
    std::optional<std::pair<double, double>> violation_range;
};

inline unsigned scan_threads_from_env()
{
    if (char const* env = std::getenv("POLCORR_THREADS"))
    {
        char* end = nullptr;
        long const v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<unsigned>(v);
    }
    unsigned const hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail
{
struct GridCandidate
{
    double distance{-1e300};
    double abs_s{0};
    std::array<std::size_t, 4> index{};
    bool valid{false};

    /// Strictly better: larger distance, then larger |S|. Equal candidates
    /// keep the earlier (lexicographically smaller) index.
    bool improves_on(GridCandidate const& o) const
    {
        if (!o.valid)
            return valid;
        if (distance != o.distance)
            return distance > o.distance;
        return abs_s > o.abs_s;
    }
};

struct ProbabilityTables
{
    std::size_t n{0};
    std::vector<double> angles;
    std::vector<double> joint;   //!< joint[i1 * n + i2]
    std::vector<double> first;   //!< P[a_i, -]
    std::vector<double> second;  //!< P[-, a_i]
};

inline ProbabilityTables make_tables(Scenario scenario, Speed speed, double step)
{
    double const period = traits(scenario).angle_period;
    ProbabilityTables t;
    t.n = static_cast<std::size_t>(std::ceil(period / step - 1e-9));
    t.angles.resize(t.n);
    for (std::size_t i = 0; i < t.n; ++i)
        t.angles[i] = static_cast<double>(i) * step;
    t.joint.resize(t.n * t.n);
    t.first.resize(t.n);
    t.second.resize(t.n);
    for (std::size_t i = 0; i < t.n; ++i)
    {
        t.first[i] = marginal(scenario, speed, Detector::first, t.angles[i]);
        t.second[i] = marginal(scenario, speed, Detector::second, t.angles[i]);
        for (std::size_t j = 0; j < t.n; ++j)
            t.joint[i * t.n + j] = joint(scenario, speed, t.angles[i], t.angles[j]);
    }
    return t;
}

/// Best grid point with chi1 index in [begin, end).
inline GridCandidate search_rows(ProbabilityTables const& t, std::size_t begin,
                                 std::size_t end)
{
    std::size_t const n = t.n;
    GridCandidate best;
    for (std::size_t i1 = begin; i1 < end; ++i1)
    {
        double const* row1 = &t.joint[i1 * n];
        for (std::size_t i2 = 0; i2 < n; ++i2)
        {
            for (std::size_t i1p = 0; i1p < n; ++i1p)
            {
                double const* row1p = &t.joint[i1p * n];
                double const base = row1[i2] + row1p[i2] - t.first[i1p] - t.second[i2];
                for (std::size_t i2p = 0; i2p < n; ++i2p)
                {
                    double const s = base - row1[i2p] + row1p[i2p];
                    double const d = signed_distance(s);
                    if (d > best.distance || (d == best.distance && std::abs(s) > best.abs_s))
                    {
                        best = {d, std::abs(s), {i1, i2, i1p, i2p}, true};
                    }
                }
            }
        }
    }
    return best;
}
} // namespace detail

/*!
 * Best settings at one speed: exhaustive grid over the four angles (each in
 * [0, period) of the scenario) maximizing the distance of S from the LHV
 * interval, optionally polished by Nelder–Mead.
 *
 * Rows are partitioned across threads and merged in row order, so the
 * result does not depend on the thread count.
 */
inline ScanPoint scan_speed(Scenario scenario, Speed speed, ScanOptions const& opts)
{
    if (!(opts.coarse_step > 0.0 && opts.coarse_step <= std::numbers::pi / 4 + 1e-15))
    {
        throw DomainError("coarse step must lie in (0, pi/4]");
    }
    detail::ProbabilityTables const t = detail::make_tables(scenario, speed, opts.coarse_step);

    unsigned threads = opts.threads == 0 ? scan_threads_from_env() : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, t.n));
    std::vector<detail::GridCandidate> partial(threads);
    if (threads <= 1)
    {
        partial[0] = detail::search_rows(t, 0, t.n);
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned k = 0; k < threads; ++k)
        {
            std::size_t const begin = t.n * k / threads;
            std::size_t const end = t.n * (k + 1) / threads;
            pool.emplace_back([&partial, &t, k, begin, end] {
                partial[k] = detail::search_rows(t, begin, end);
            });
        }
        for (auto& th : pool)
            th.join();
    }
    detail::GridCandidate best;
    for (auto const& c : partial)
        if (c.improves_on(best))
            best = c;

    ScanPoint point;
    point.beta = speed.beta();
    point.coarse_angles = {t.angles[best.index[0]], t.angles[best.index[1]],
                           t.angles[best.index[2]], t.angles[best.index[3]]};
    point.coarse = classify(s_functional(scenario, speed, point.coarse_angles));
    point.angles = point.coarse_angles;
    point.result = point.coarse;

    if (opts.refine)
    {
        // Push S further from the interval on the side the grid found.
        double const direction = point.coarse.s < -0.5 ? 1.0 : -1.0;
        auto objective = [&](std::array<double, 4> const& x) {
            return direction * s_functional(scenario, speed, {x[0], x[1], x[2], x[3]});
        };
        NelderMeadOptions nm;
        nm.initial_step = opts.coarse_step / 2;
        nm.diameter_tolerance = 1e-6;
        auto const& a = point.coarse_angles;
        auto const res = nelder_mead_minimize(objective,
                                              std::array<double, 4>{a.chi1, a.chi2, a.chi1p, a.chi2p},
                                              nm);
        BellAngles const refined
            = BellAngles{res.x[0], res.x[1], res.x[2], res.x[3]}.normalized();
        BellResult const r = classify(s_functional(scenario, speed, refined));
        if (signed_distance(r.s) >= signed_distance(point.coarse.s))
        {
            point.angles = refined;
            point.result = r;
        }
    }
    return point;
}

inline ScanReport scan(Scenario scenario, std::span<double const> beta_grid,
                       ScanOptions const& opts = {})
{
    if (beta_grid.empty())
        throw DomainError("scan needs a nonempty speed grid");
    std::vector<double> betas(beta_grid.begin(), beta_grid.end());
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

    ScanReport report;
    report.scenario = scenario;
    for (double b : betas)
        report.points.push_back(scan_speed(scenario, Speed(b), opts));

    std::size_t best_len = 0;
    std::size_t best_start = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < report.points.size(); ++i)
    {
        run = report.points[i].result.violated ? run + 1 : 0;
        if (run > best_len)
        {
            best_len = run;
            best_start = i + 1 - run;
        }
    }
    if (best_len > 0)
    {
        report.violation_range = std::pair{report.points[best_start].beta,
                                           report.points[best_start + best_len - 1].beta};
    }
    return report;
}

//---------------------------------------------------------------------------//
// Speed sweeps
//---------------------------------------------------------------------------//
/// min, min + step, ... up to max (inclusive within a relative 1e-9 slack).
inline std::vector<double> beta_range(double min, double max, double step)
{
    if (!(step > 0.0))
        throw DomainError("beta step must be positive");
    if (!(max >= min))
        throw DomainError("empty beta range");
    static_cast<void>(Speed{min});
    static_cast<void>(Speed{max});
    auto const count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::min(max, min + static_cast<double>(i) * step));
    return out;
}

struct SweepRow
{
    double beta{0};
    BellResult result;
};

/// S at fixed settings for each speed, ascending.
inline std::vector<SweepRow> sweep_fixed(Scenario scenario, std::span<double const> betas,
                                         BellAngles const& angles)
{
    if (betas.empty())
        throw DomainError("sweep needs a nonempty speed grid");
    std::vector<double> sorted(betas.begin(), betas.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<SweepRow> rows;
    rows.reserve(sorted.size());
    for (double b : sorted)
        rows.push_back({b, s_value(BellSettings{scenario, Speed(b), angles})});
    return rows;
}

} // namespace polcorr
