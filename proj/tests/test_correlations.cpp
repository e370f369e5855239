#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "polcorr/amplitudes.hpp"
#include "polcorr/correlations.hpp"

using namespace polcorr;
using Catch::Matchers::WithinAbs;

namespace
{
constexpr double pi = std::numbers::pi;
}

TEST_CASE("scenario names", "[correlations]")
{
    for (Scenario s : kAllScenarios)
    {
        REQUIRE(scenario_from_name(traits(s).cli_name) == s);
        REQUIRE(scenario_from_name(traits(s).name) == s);
    }
    REQUIRE_FALSE(scenario_from_name("moller").has_value());
}

TEST_CASE("joint probability spot values", "[correlations]")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int i = 0; i < 20; ++i)
    {
        double const c1 = angle(rng), c2 = angle(rng);
        CHECK_THAT(joint(Scenario::MollerPolarizedTheta0, Speed(0.0), c1, c2),
                   WithinAbs(std::pow(std::sin((c1 - c2) / 2), 2) / 2, 1e-15));
        CHECK_THAT(joint(Scenario::Spin0Annihilation, Speed(0.0), c1, c2),
                   WithinAbs(std::pow(std::cos(c1 - c2), 2) / 2, 1e-15));
    }

    CHECK_THAT(joint(Scenario::MollerUnpolarized, Speed(1.0), 0.0, 0.0),
               WithinAbs(5.0 / 18.0, 1e-15));
    CHECK_THAT(joint(Scenario::MollerUnpolarized, Speed(0.0), 0.0, 0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(joint(Scenario::Spin0Annihilation, Speed(1.0), 0.0, 0.0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(joint(Scenario::PhotonPolarized, Speed(0.0), 0.0, pi / 2), WithinAbs(0.5, 1e-15));

    for (double b : {0.1, 0.4, 0.8})
    {
        Speed const s(b);
        double const r2 = std::pow(rho_of_beta(s), 2);
        double const sym = b * (1 - r2);
        double const anti = 1 + r2;
        for (double chi : {0.0, 0.3, 1.0})
        {
            double const want = sym * sym * std::pow(std::cos(2 * chi), 2)
                                / (2 * (anti * anti + sym * sym));
            CHECK_THAT(joint(Scenario::PhotonPolarized, s, chi, chi), WithinAbs(want, 1e-15));
        }
    }
}

TEST_CASE("single-detector probabilities", "[correlations]")
{
    for (double b : {0.0, 0.3, 0.9})
        for (double chi : {0.0, 1.0, 2.5})
        {
            CHECK(marginal(Scenario::PhotonPolarized, Speed(b), Detector::first, chi) == 0.5);
            CHECK(marginal(Scenario::MollerUnpolarized, Speed(b), Detector::second, chi) == 0.5);
        }
    for (double b : {0.0, 0.3, 0.9})
        CHECK_THAT(marginal(Scenario::MollerPolarizedTheta0, Speed(b), Detector::first, 0.0),
                   WithinAbs(0.5, 1e-15));
    CHECK_THAT(marginal(Scenario::PhotonUnpolarized, Speed(0.5), Detector::first, 0.0),
               WithinAbs(1.75 / 2.75, 1e-15));
}

TEST_CASE("unpolarized normalization is independent of the angles", "[correlations]")
{
    for (double b = 0.0; b <= 1.0; b += 0.05)
    {
        Speed const s(b);
        double const c = unpolarized_moller_normalization(s);
        REQUIRE_THAT(c, WithinAbs(2 * (1 + 2 * b * b + 6 * std::pow(b, 4)), 1e-13));
        for (double c1 = 0.0; c1 < 2 * pi; c1 += 0.7)
            for (double c2 = 0.0; c2 < 2 * pi; c2 += 0.7)
            {
                double total = 0;
                for (double d1 : {0.0, pi})
                    for (double d2 : {0.0, pi})
                        total += unpolarized_moller_weight_closed_form(s, c1 + d1, c2 + d2);
                REQUIRE_THAT(total, WithinAbs(c, 1e-12));
            }
    }
}

TEST_CASE("marginalization and completeness", "[correlations]")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> beta(0.0, 1.0), angle(0.0, 2 * pi);
    for (Scenario sc : kAllScenarios)
    {
        for (int i = 0; i < 100; ++i)
        {
            auto const check = marginalization_check(sc, Speed(beta(rng)), angle(rng), angle(rng));
            INFO(traits(sc).name);
            REQUIRE(check.passed);
            REQUIRE(check.residuals.max() <= 1e-12);
        }
        for (double b : {0.0, 1.0})
            REQUIRE(marginalization_check(sc, Speed(b), 0.4, 2.0).passed);
    }
}

TEST_CASE("probabilities stay in [0, 1]", "[correlations]")
{
    for (Scenario sc : kAllScenarios)
        for (int k = 0; k <= 20; ++k)
        {
            Speed const s(k / 20.0);
            for (int i = 0; i < 36; ++i)
                for (int j = 0; j < 36; ++j)
                {
                    double const p = joint(sc, s, i * pi / 18, j * pi / 18);
                    REQUIRE(p >= -1e-12);
                    REQUIRE(p <= 1.0 + 1e-12);
                }
        }
}

TEST_CASE("angle periodicity", "[correlations]")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> beta(0.0, 1.0), angle(0.0, 2 * pi);
    for (Scenario sc : kAllScenarios)
    {
        double const period = traits(sc).angle_period;
        for (int i = 0; i < 50; ++i)
        {
            Speed const s(beta(rng));
            double const c1 = angle(rng), c2 = angle(rng);
            double const p = joint(sc, s, c1, c2);
            REQUIRE_THAT(joint(sc, s, c1 + period, c2), WithinAbs(p, 1e-12));
            REQUIRE_THAT(joint(sc, s, c1, c2 + period), WithinAbs(p, 1e-12));
            REQUIRE_THAT(joint(sc, s, c1 + 2 * pi, c2), WithinAbs(p, 1e-12));
        }
    }
    // the theta = pi/2 Møller joint depends on the difference only
    for (double shift : {0.3, 1.7})
        REQUIRE_THAT(joint(Scenario::MollerPolarizedThetaPi2, Speed(0.5), 0.2 + shift, 1.1 + shift),
                     WithinAbs(joint(Scenario::MollerPolarizedThetaPi2, Speed(0.5), 0.2, 1.1),
                               1e-15));
}

TEST_CASE("theta = pi/2 Møller joint matches its singlet state", "[correlations]")
{
    for (double b = 0.1; b < 0.95; b += 0.2)
    {
        EntangledState const st = extract_moller_state(Speed(b), pi / 2);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
            {
                double const c1 = 2 * pi * i / 12, c2 = 2 * pi * j / 12;
                double const proj = spin_projection_probability(
                    st, measurement_two_spinor(c1, SpinConvention::moller_theta0),
                    measurement_two_spinor(c2, SpinConvention::moller_theta0));
                REQUIRE_THAT(proj, WithinAbs(joint(Scenario::MollerPolarizedThetaPi2, Speed(b),
                                                   c1, c2),
                                             1e-10));
            }
    }
}

TEST_CASE("photon projection differs from the closed-form joint by a quarter turn",
          "[correlations]")
{
    // The closed-form joint carries cos^2(chi1 + chi2); projecting the extracted
    // state gives sin^2. The two agree once both angles move by pi/4.
    for (double b : {0.2, 0.6})
    {
        Speed const s(b);
        EntangledState const st = extract_photon_state(s, pi / 2);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
            {
                double const c1 = pi * i / 12, c2 = pi * j / 12;
                double const closed = joint(Scenario::PhotonPolarized, s, c1 + pi / 4, c2 + pi / 4);
                REQUIRE_THAT(polarization_projection_probability(st, c1, c2),
                             WithinAbs(closed, 1e-12));
            }
    }
}
