#pragma once

// Self-verification suite: every closed form checked against an independent
// computation (direct spinor contraction, explicit spin sums, projections of
// extracted states, exhaustive enumeration).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "polcorr/amplitudes.hpp"
#include "polcorr/bell.hpp"
#include "polcorr/correlations.hpp"
#include "polcorr/gamma.hpp"
#include "polcorr/kinematics.hpp"

namespace polcorr
{

struct VerifyOptions
{
    bool quick{false};
    /// Added to rho inside the closed-form bilinears. Nonzero values must
    /// make the bilinear checks fail.
    double rho_shift{0.0};
    unsigned seed{20040101u};
};

struct CheckResult
{
    std::string name;
    double max_residual{0};
    double tolerance{0};
    bool passed{false};
    std::string detail;
};

namespace detail
{
inline CheckResult finish(std::string name, double residual, double tol, std::string detail = {})
{
    return {std::move(name), residual, tol, residual <= tol, std::move(detail)};
}

inline std::string fmt(char const* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

inline std::vector<double> tenths()
{
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}
} // namespace detail

/// {gamma^mu, gamma^nu} = 2 g^{mu nu}, gamma^0 Hermitian, gamma^i anti-Hermitian.
inline CheckResult check_clifford()
{
    double worst = 0;
    for (int mu = 0; mu < 4; ++mu)
    {
        for (int nu = mu; nu < 4; ++nu)
        {
            Matrix4 ac = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            if (mu == nu)
                ac -= Matrix4::identity() * Complex{2.0 * metric(mu)};
            worst = std::max(worst, ac.max_abs());
        }
        Matrix4 const h = mu == 0 ? gamma(0).adjoint() - gamma(0)
                                  : gamma(mu).adjoint() + gamma(mu);
        worst = std::max(worst, h.max_abs());
    }
    return detail::finish("clifford algebra and hermiticity", worst, 1e-15);
}

/*!
 * The eight Møller bilinears in closed form against direct contraction at
 * random (beta, theta, chi). A single phase per bilinear family is fixed
 * from the first draw and reported.
 */
inline CheckResult check_moller_bilinears(VerifyOptions const& opts)
{
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> beta_d(0.0, 0.95), theta_d(0.0, std::numbers::pi),
        chi_d(0.0, 2 * std::numbers::pi);
    int const draws = opts.quick ? 40 : 200;
    double worst = 0;
    std::string phases;
    for (MollerBilinear kind : kAllMollerBilinears)
    {
        bool const spatial = legs(kind).spatial;
        Complex phase{};
        for (int d = 0; d < draws; ++d)
        {
            Speed const speed(beta_d(rng));
            double const theta = theta_d(rng);
            TwoSpinor const xi
                = measurement_two_spinor(chi_d(rng), SpinConvention::moller_theta0);
            for (int c = spatial ? 1 : 0; c <= (spatial ? 3 : 0); ++c)
            {
                Complex const direct = contracted_moller_bilinear(kind, c, xi, speed, theta);
                Complex const closed
                    = closed_form_moller_bilinear(kind, c, xi, speed, theta, opts.rho_shift);
                if (phase == Complex{} && std::abs(direct) > 1e-3)
                    phase = closed / direct;
                Complex const p = phase == Complex{} ? Complex{1.0} : phase;
                worst = std::max(worst, std::abs(closed - p * direct)
                                            / std::max(std::abs(direct), 1e-8));
            }
        }
        phases += detail::fmt(" %.3g", std::arg(phase));
    }
    return detail::finish("Møller closed-form bilinears vs contraction", worst, 1e-10,
                          "family phases (rad):" + phases);
}

/// vbar Gamma u closed forms for every index combination.
inline CheckResult check_annihilation_bilinears(VerifyOptions const& opts)
{
    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> beta_d(0.0, 0.95);
    int const draws = opts.quick ? 40 : 200;
    double worst = 0;
    for (int d = 0; d < draws; ++d)
    {
        Speed const speed(beta_d(rng));
        double const scale = (gamma_factor(speed) + 1.0) / 2.0;
        auto compare = [&](AnnihilationBilinear kind, std::array<int, 3> idx) {
            Complex const direct = contracted_annihilation_bilinear(kind, idx, speed);
            Complex const closed
                = closed_form_annihilation_bilinear(kind, idx, speed, opts.rho_shift);
            worst = std::max(worst, std::abs(closed - direct) / std::max(std::abs(direct), scale));
        };
        for (int i = 1; i <= 3; ++i)
        {
            compare(AnnihilationBilinear::g_i, {i, 1, 1});
            for (int j = 1; j <= 3; ++j)
            {
                compare(AnnihilationBilinear::g_i_g0_g_j, {i, j, 1});
                for (int k = 1; k <= 3; ++k)
                    compare(AnnihilationBilinear::g_i_g_m_g_j, {i, j, k});
            }
        }
    }
    return detail::finish("annihilation closed-form bilinears vs contraction", worst, 1e-10);
}

/*!
 * Full four-term annihilation amplitude against the reduced form, with one
 * constant per (beta, theta): a (beta, chi1, chi2) grid at theta = pi/2 plus
 * random draws over theta.
 */
inline CheckResult check_photon_reduction(VerifyOptions const& opts)
{
    int const n = opts.quick ? 5 : 10;
    double worst = 0;
    auto residual_at = [&](Speed speed, double theta, double chi1, double chi2) {
        PhotonPolarization const ry = photon_polarization(std::numbers::pi / 2, theta);
        PhotonPolarization const rz = photon_polarization(0.0, theta);
        Complex const c = annihilation_amplitude(ry, rz, speed, theta)
                          / reduced_annihilation_amplitude(ry, rz, speed, theta);
        PhotonPolarization const e1 = photon_polarization(chi1, theta);
        PhotonPolarization const e2 = photon_polarization(chi2, theta);
        Complex const full = annihilation_amplitude(e1, e2, speed, theta);
        Complex const reduced = reduced_annihilation_amplitude(e1, e2, speed, theta);
        double const scale = std::abs(c) * (1.0 + std::pow(rho_of_beta(speed), 2));
        return std::abs(full - c * reduced) / scale;
    };
    for (int ib = 0; ib < n; ++ib)
    {
        Speed const speed(0.05 + 0.9 * ib / (n - 1));
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                worst = std::max(worst, residual_at(speed, std::numbers::pi / 2,
                                                    std::numbers::pi * i1 / n,
                                                    std::numbers::pi * i2 / n));
    }
    std::mt19937_64 rng(opts.seed + 2);
    std::uniform_real_distribution<double> beta_d(0.01, 0.95), theta_d(0.0, std::numbers::pi),
        chi_d(0.0, 2 * std::numbers::pi);
    for (int d = 0; d < (opts.quick ? 20 : 100); ++d)
    {
        Speed const speed(beta_d(rng));
        double const theta = theta_d(rng);
        double const c1 = chi_d(rng);
        worst = std::max(worst, residual_at(speed, theta, c1, chi_d(rng)));
    }
    return detail::finish("full annihilation amplitude proportional to reduced form", worst,
                          1e-8);
}

/// Explicit initial-spin sum against F[chi1, chi2], one constant per beta.
inline CheckResult check_spin_sum(VerifyOptions const& opts)
{
    std::mt19937_64 rng(opts.seed + 3);
    std::uniform_real_distribution<double> chi_d(0.0, 2 * std::numbers::pi);
    int const pairs = opts.quick ? 10 : 50;
    double worst = 0;
    for (double b : detail::tenths())
    {
        Speed const speed(b);
        double reference = 0;
        for (int k = 0; k < pairs; ++k)
        {
            double const c1 = chi_d(rng);
            double const c2 = chi_d(rng);
            double const w = moller_unpolarized_weight(
                measurement_two_spinor(c1, SpinConvention::unpolarized_z),
                measurement_two_spinor(c2, SpinConvention::unpolarized_z), speed);
            double const ratio = w / unpolarized_moller_weight_closed_form(speed, c1, c2);
            if (k == 0)
                reference = ratio;
            worst = std::max(worst, std::abs(ratio / reference - 1.0));
        }
    }
    return detail::finish("unpolarized spin sum proportional to F", worst, 1e-8);
}

/// Closed-form Møller theta = 0 joint against projection of the extracted state.
inline CheckResult check_moller_projection(VerifyOptions const&)
{
    double worst = 0;
    for (double b : detail::tenths())
    {
        Speed const speed(b);
        EntangledState const state = extract_moller_state(speed, 0.0);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
            {
                double const c1 = 2 * std::numbers::pi * i / 12;
                double const c2 = 2 * std::numbers::pi * j / 12;
                double const projected = spin_projection_probability(
                    state, measurement_two_spinor(c1, SpinConvention::moller_theta0),
                    measurement_two_spinor(c2, SpinConvention::moller_theta0));
                worst = std::max(worst, std::abs(projected
                                                 - joint(Scenario::MollerPolarizedTheta0,
                                                         speed, c1, c2)));
            }
    }
    return detail::finish("Møller theta=0 joint equals state projection", worst, 1e-10);
}

/// Closed-form photon joint against projection of the extracted theta = pi/2 state.
inline CheckResult check_photon_projection(VerifyOptions const&)
{
    double worst = 0;
    for (double b : detail::tenths())
    {
        Speed const speed(b);
        EntangledState const state = extract_photon_state(speed, std::numbers::pi / 2);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
            {
                double const c1 = std::numbers::pi * i / 12;
                double const c2 = std::numbers::pi * j / 12;
                double const projected = polarization_projection_probability(state, c1, c2);
                worst = std::max(worst, std::abs(projected
                                                 - joint(Scenario::PhotonPolarized, speed,
                                                         c1, c2)));
            }
    }
    return detail::finish("photon joint equals state projection", worst, 1e-10,
                          "the closed-form joint carries cos^2(chi1+chi2); projection gives sin^2");
}

/// Singlet limits of the extracted states.
inline CheckResult check_singlet_limits(VerifyOptions const&)
{
    double worst = 0;
    for (double b : detail::tenths())
    {
        worst = std::max(worst, 1.0 - fidelity(extract_moller_state(Speed(b), std::numbers::pi / 2),
                                               spin_singlet()));
        worst = std::max(worst, 1.0 - fidelity(extract_photon_state(Speed(b), 0.0),
                                               photon_antisymmetric_state()));
    }
    worst = std::max(worst, 1.0 - fidelity(extract_moller_state(Speed(1e-4), 0.0),
                                           spin_singlet()));
    return detail::finish("singlet limits of extracted states", worst, 1e-10);
}

/*!
 * Marginalization, completeness and range of every scenario on a
 * 21 (beta) x 36 x 36 (angle) grid, plus the angle independence of the
 * unpolarized Møller normalization.
 */
inline CheckResult check_identities(VerifyOptions const& opts)
{
    int const nb = opts.quick ? 6 : 21;
    int const na = opts.quick ? 12 : 36;
    double worst = 0;
    double range_violation = 0;
    for (Scenario sc : kAllScenarios)
        for (int ib = 0; ib < nb; ++ib)
        {
            Speed const speed(static_cast<double>(ib) / (nb - 1));
            for (int i = 0; i < na; ++i)
            {
                double const c1 = 2 * std::numbers::pi * i / na;
                for (Detector d : {Detector::first, Detector::second})
                {
                    double const m = marginal(sc, speed, d, c1);
                    range_violation = std::max({range_violation, -m, m - 1.0});
                }
                for (int j = 0; j < na; ++j)
                {
                    double const c2 = 2 * std::numbers::pi * j / na;
                    worst = std::max(worst, marginalization_check(sc, speed, c1, c2).residuals.max());
                    double const p = joint(sc, speed, c1, c2);
                    range_violation = std::max({range_violation, -p, p - 1.0});
                    if (sc == Scenario::MollerUnpolarized)
                    {
                        constexpr double pi = std::numbers::pi;
                        auto f = [&](double a, double b) {
                            return unpolarized_moller_weight_closed_form(speed, a, b);
                        };
                        double const sum = f(c1, c2) + f(c1 + pi, c2) + f(c1, c2 + pi)
                                           + f(c1 + pi, c2 + pi);
                        double const c = unpolarized_moller_normalization(speed);
                        worst = std::max(worst, std::abs(sum - c) / c);
                    }
                }
            }
        }
    return detail::finish("marginalization, completeness, range, normalization",
                          std::max(worst, range_violation), 1e-12);
}

inline CheckResult check_lhv()
{
    LhvReport const r = lhv_bound_check();
    double const residual = r.passed ? 0.0 : 1.0;
    return detail::finish("LHV bound over 16 deterministic strategies", residual, 0.0,
                          detail::fmt("min S = %g", r.min) + detail::fmt(", max S = %g", r.max));
}

struct ReferenceExample
{
    char const* label;
    Scenario scenario;
    double beta;
    BellAngles degrees;
    double expected;
    double tolerance;
};

inline constexpr std::array<ReferenceExample, 3> kReferenceExamples{{
    {"Møller polarized theta=0, beta=0.3", Scenario::MollerPolarizedTheta0, 0.3,
     {0, 137, 12, 45}, -1.79, 0.01},
    {"photon polarized, beta=0.2", Scenario::PhotonPolarized, 0.2, {0, 23, 45, 67},
     -1.187, 0.005},
    {"Møller unpolarized, beta=0.3", Scenario::MollerUnpolarized, 0.3, {0, 45, 90, 135},
     -1.165, 0.005},
}};

inline double reference_example_s(ReferenceExample const& ex)
{
    auto const& d = ex.degrees;
    return s_value({ex.scenario, Speed(ex.beta),
                    BellAngles::from_degrees(d.chi1, d.chi2, d.chi1p, d.chi2p)})
        .s;
}

inline CheckResult check_reference_example(ReferenceExample const& ex)
{
    double const s = reference_example_s(ex);
    return detail::finish(std::string("S value: ") + ex.label, std::abs(s - ex.expected),
                          ex.tolerance,
                          detail::fmt("S = %.6f", s) + detail::fmt(" expected %.4g", ex.expected));
}

inline std::vector<CheckResult> run_verification(VerifyOptions const& opts = {})
{
    std::vector<CheckResult> out;
    out.push_back(check_clifford());
    out.push_back(check_moller_bilinears(opts));
    out.push_back(check_annihilation_bilinears(opts));
    out.push_back(check_photon_reduction(opts));
    out.push_back(check_spin_sum(opts));
    out.push_back(check_moller_projection(opts));
    out.push_back(check_photon_projection(opts));
    out.push_back(check_singlet_limits(opts));
    out.push_back(check_identities(opts));
    out.push_back(check_lhv());
    for (auto const& ex : kReferenceExamples)
        out.push_back(check_reference_example(ex));
    return out;
}

} // namespace polcorr
