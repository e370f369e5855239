#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "polcorr/amplitudes.hpp"
#include "polcorr/correlations.hpp"

using namespace polcorr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
constexpr double pi = std::numbers::pi;
}

TEST_CASE("Møller amplitude is singular at rest", "[amplitudes]")
{
    REQUIRE_THROWS_AS(moller_amplitude(kSpinUp, kSpinDown, Speed(0.0), 0.0),
                      DegenerateKinematics);
    REQUIRE_THROWS_AS(extract_moller_state(Speed(0.0), pi / 2), DegenerateKinematics);
    REQUIRE_THROWS_AS(moller_unpolarized_weight(kSpinUp, kSpinUp, Speed(0.0)),
                      DegenerateKinematics);
}

TEST_CASE("Møller amplitude is antisymmetric under exchange of the outgoing electrons",
          "[amplitudes]")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> beta(0.05, 0.95), angle(0.0, 2 * pi);
    for (int i = 0; i < 100; ++i)
    {
        Speed const s(beta(rng));
        double const theta = angle(rng) / 2;
        TwoSpinor const a = measurement_two_spinor(angle(rng), SpinConvention::moller_theta0);
        TwoSpinor const b = measurement_two_spinor(angle(rng), SpinConvention::moller_theta0);
        // theta -> theta + pi swaps p1' and p2'
        Complex const lhs = moller_amplitude(a, b, s, theta);
        Complex const rhs = moller_amplitude(b, a, s, theta + pi);
        REQUIRE(std::abs(lhs + rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Møller theta = 0 state", "[amplitudes]")
{
    Speed const s(0.6);
    EntangledState const st = extract_moller_state(s, 0.0);
    REQUIRE_THAT(st.norm(), WithinAbs(1.0, 1e-14));
    // rho = 1/3: (1 + 6/9 + 1/81) : 4/9 = 136 : 36
    CHECK_THAT(std::abs(st.coeff(0, 0)) / std::abs(st.coeff(1, 0)),
               WithinRel(36.0 / 136.0, 1e-12));
    CHECK_THAT(std::abs(st.coeff(1, 1)) / std::abs(st.coeff(0, 1)),
               WithinRel(36.0 / 136.0, 1e-12));
    CHECK_THAT(fidelity(st, closed_form_moller_state_theta0(s)), WithinAbs(1.0, 1e-12));

    for (double b = 0.1; b < 0.95; b += 0.1)
        REQUIRE_THAT(fidelity(extract_moller_state(Speed(b), 0.0),
                              closed_form_moller_state_theta0(Speed(b))),
                     WithinAbs(1.0, 1e-12));
}

TEST_CASE("Møller singlet limits", "[amplitudes]")
{
    for (double b : {1e-4, 0.2, 0.5, 0.9})
        REQUIRE_THAT(fidelity(extract_moller_state(Speed(b), pi / 2), spin_singlet()),
                     WithinAbs(1.0, 1e-10));

    double const f4 = fidelity(extract_moller_state(Speed(1e-4), 0.0), spin_singlet());
    double const f3 = fidelity(extract_moller_state(Speed(1e-3), 0.0), spin_singlet());
    REQUIRE_THAT(f4, WithinAbs(1.0, 1e-10));
    // the deficit scales as rho^4, so it shrinks by ~1e4 between the two points
    REQUIRE((1.0 - f3) > (1.0 - f4));
}

TEST_CASE("Møller projection reproduces the theta = 0 joint", "[amplitudes]")
{
    for (double b = 0.1; b < 0.95; b += 0.1)
    {
        Speed const s(b);
        EntangledState const st = extract_moller_state(s, 0.0);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
            {
                double const c1 = 2 * pi * i / 12, c2 = 2 * pi * j / 12;
                double const proj = spin_projection_probability(
                    st, measurement_two_spinor(c1, SpinConvention::moller_theta0),
                    measurement_two_spinor(c2, SpinConvention::moller_theta0));
                REQUIRE_THAT(proj, WithinAbs(joint(Scenario::MollerPolarizedTheta0, s, c1, c2),
                                             1e-10));
            }
    }
}

TEST_CASE("unpolarized spin sum is proportional to the closed form", "[amplitudes][oracle]")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int k = 1; k <= 9; ++k)
    {
        Speed const s(k / 10.0);
        double const b4 = std::pow(s.beta(), 4);
        for (int i = 0; i < 50; ++i)
        {
            double const c1 = angle(rng), c2 = angle(rng);
            double const sum = moller_unpolarized_weight(
                measurement_two_spinor(c1, SpinConvention::unpolarized_z),
                measurement_two_spinor(c2, SpinConvention::unpolarized_z), s);
            double const f = unpolarized_moller_weight_closed_form(s, c1, c2);
            // the constant works out to exactly 1 / (2 beta^4)
            REQUIRE_THAT(sum, WithinRel(f / (2.0 * b4), 1e-8));
        }
    }
}

TEST_CASE("annihilation amplitude reduces to the compact form", "[amplitudes][oracle]")
{
    for (double b : {0.0, 0.1, 0.45, 0.8})
    {
        Speed const s(b);
        double const g = gamma_factor(s);
        Complex const c{-(g + 1.0) / (2.0 * g), 0.0};
        for (double theta : {0.3, pi / 2, 2.2})
            for (double x1 = 0.0; x1 < pi; x1 += 0.4)
                for (double x2 = 0.0; x2 < pi; x2 += 0.4)
                {
                    auto const e1 = photon_polarization(x1, theta);
                    auto const e2 = photon_polarization(x2, theta);
                    Complex const full = annihilation_amplitude(e1, e2, s, theta);
                    Complex const reduced = reduced_annihilation_amplitude(e1, e2, s, theta);
                    REQUIRE(std::abs(full - c * reduced) <= 1e-12);
                }
    }
}

TEST_CASE("photon states", "[amplitudes]")
{
    Speed const s(0.6);
    EntangledState const st = extract_photon_state(s, pi / 2);
    CHECK_THAT(fidelity(st, closed_form_photon_state_theta90(s)), WithinAbs(1.0, 1e-12));

    // beta (1 - rho^2) / (1 + rho^2) = 0.6 (8/9) / (10/9)
    Complex const yz = st.coeff(0, 1), zy = st.coeff(1, 0);
    Complex const sym = (yz + zy) / 2.0, anti = (yz - zy) / 2.0;
    CHECK_THAT(std::abs(sym) / std::abs(anti), WithinRel(0.48, 1e-12));
    CHECK(std::abs(st.coeff(0, 0)) < 1e-14);
    CHECK(std::abs(st.coeff(1, 1)) < 1e-14);

    CHECK_THAT(fidelity(extract_photon_state(Speed(0.0), pi / 2), photon_antisymmetric_state()),
               WithinAbs(1.0, 1e-14));
    CHECK_THAT(fidelity(extract_photon_state(Speed(1e-4), 1.1), photon_antisymmetric_state()),
               WithinAbs(1.0, 1e-7));
}

TEST_CASE("at rest only the triple product survives", "[amplitudes]")
{
    Speed const s(0.0);
    auto const e1 = photon_polarization(0.3, 1.0);
    auto const e2 = photon_polarization(1.4, 1.0);
    Complex const r = reduced_annihilation_amplitude(e1, e2, s, 1.0);
    double const triple = dot(scattering_direction(1.0), cross(e1.vec(), e2.vec()));
    CHECK(std::abs(r - (-kI * triple)) < 1e-15);
}

TEST_CASE("entangled state helpers", "[amplitudes]")
{
    EntangledState zero;
    REQUIRE_THROWS_AS(zero.normalized(), DegenerateKinematics);

    EntangledState const singlet = spin_singlet();
    CHECK_THAT(singlet.norm(), WithinAbs(1.0, 1e-15));
    // anticorrelated along every axis
    for (double chi = 0.0; chi < 2 * pi; chi += 0.5)
    {
        auto const x = measurement_two_spinor(chi, SpinConvention::moller_theta0);
        CHECK_THAT(spin_projection_probability(singlet, x, x), WithinAbs(0.0, 1e-15));
    }
}
