#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace polcorr
{

struct NelderMeadOptions
{
    double initial_step{0.05};
    double diameter_tolerance{1e-6};  //!< stop once every vertex is this close to the best
    std::size_t max_evaluations{20000};
};

template<std::size_t N>
struct NelderMeadResult
{
    std::array<double, N> x{};
    double value{0};
    std::size_t evaluations{0};
    bool converged{false};
};

/*!
 * Deterministic Nelder–Mead minimization with the standard coefficients
 * (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
 *
 * The returned value is never worse than f(start).
 */
template<std::size_t N, class F>
NelderMeadResult<N> nelder_mead_minimize(F&& f, std::array<double, N> const& start,
                                         NelderMeadOptions const& opts = {})
{
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    std::size_t evals = 0;
    auto eval = [&](Point const& p) {
        ++evals;
        return f(p);
    };

    pts[0] = start;
    vals[0] = eval(start);
    for (std::size_t i = 0; i < N; ++i)
    {
        pts[i + 1] = start;
        pts[i + 1][i] += opts.initial_step;
        vals[i + 1] = eval(pts[i + 1]);
    }

    std::array<std::size_t, N + 1> order;
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        auto p = pts;
        auto v = vals;
        for (std::size_t i = 0; i <= N; ++i)
        {
            pts[i] = p[order[i]];
            vals[i] = v[order[i]];
        }
    };
    auto diameter = [&] {
        double d = 0;
        for (std::size_t i = 1; i <= N; ++i)
            for (std::size_t k = 0; k < N; ++k)
                d = std::max(d, std::abs(pts[i][k] - pts[0][k]));
        return d;
    };
    auto along = [&](Point const& c, Point const& w, double t) {
        Point r;
        for (std::size_t k = 0; k < N; ++k)
            r[k] = c[k] + t * (w[k] - c[k]);
        return r;
    };

    bool converged = false;
    sort_vertices();
    while (evals < opts.max_evaluations)
    {
        if (diameter() < opts.diameter_tolerance)
        {
            converged = true;
            break;
        }
        Point centroid{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k)
                centroid[k] += pts[i][k] / static_cast<double>(N);

        Point const& worst = pts[N];
        Point const reflected = along(centroid, worst, -1.0);
        double const fr = eval(reflected);
        if (fr < vals[0])
        {
            Point const expanded = along(centroid, worst, -2.0);
            double const fe = eval(expanded);
            if (fe < fr)
            {
                pts[N] = expanded;
                vals[N] = fe;
            }
            else
            {
                pts[N] = reflected;
                vals[N] = fr;
            }
        }
        else if (fr < vals[N - 1])
        {
            pts[N] = reflected;
            vals[N] = fr;
        }
        else
        {
            bool const outside = fr < vals[N];
            Point const contracted
                = outside ? along(centroid, reflected, 0.5) : along(centroid, worst, 0.5);
            double const fc = eval(contracted);
            if (fc < (outside ? fr : vals[N]))
            {
                pts[N] = contracted;
                vals[N] = fc;
            }
            else
            {
                for (std::size_t i = 1; i <= N; ++i)
                {
                    pts[i] = along(pts[0], pts[i], 0.5);
                    vals[i] = eval(pts[i]);
                }
            }
        }
        sort_vertices();
    }
    return {pts[0], vals[0], evals, converged};
}

} // namespace polcorr
