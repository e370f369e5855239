#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "polcorr/gamma.hpp"

using namespace polcorr;
using Catch::Matchers::WithinAbs;

namespace
{
constexpr double pi = std::numbers::pi;

double relative(Complex got, Complex want)
{
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
} // namespace

TEST_CASE("Clifford algebra", "[gamma]")
{
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
        {
            Matrix4 const anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            Matrix4 const want = Complex(mu == nu ? 2.0 * metric(mu) : 0.0)
                                 * Matrix4::identity();
            REQUIRE((anti - want).max_abs() <= 1e-15);
        }
}

TEST_CASE("hermiticity of gamma matrices", "[gamma]")
{
    REQUIRE((gamma(0).adjoint() - gamma(0)).max_abs() == 0.0);
    for (int i = 1; i < 4; ++i)
    {
        REQUIRE((gamma(i).adjoint() + gamma(i)).max_abs() == 0.0);
        REQUIRE((gamma(0) * gamma(i) * gamma(0) - gamma(i).adjoint()).max_abs() == 0.0);
    }
}

TEST_CASE("gamma index is validated", "[gamma]")
{
    REQUIRE_THROWS_AS(gamma(4), DomainError);
    REQUIRE_THROWS_AS(gamma(-1), DomainError);
}

TEST_CASE("trace identities", "[gamma]")
{
    for (int mu = 0; mu < 4; ++mu)
    {
        REQUIRE(std::abs(gamma(mu).trace()) == 0.0);
        for (int nu = 0; nu < 4; ++nu)
        {
            double const want = mu == nu ? 4.0 * metric(mu) : 0.0;
            REQUIRE(std::abs((gamma(mu) * gamma(nu)).trace() - want) < 1e-15);
        }
    }
}

TEST_CASE("slashed vector squares to its invariant mass", "[gamma]")
{
    FourVector const k{1.3, 0.2, -0.7, 0.4};
    Matrix4 const s = slash(k);
    Matrix4 const want = Complex(invariant_mass_squared(k)) * Matrix4::identity();
    REQUIRE((s * s - want).max_abs() < 1e-14);
}

TEST_CASE("bilinear basics", "[gamma]")
{
    auto const u = electron_spinor_initial(InitialElectron::spin_up_p1, Speed(0.0));
    REQUIRE(std::abs(bilinear(u, Matrix4::identity(), u) - 1.0) < 1e-15);
    REQUIRE(std::abs(bilinear(u, {}, u) - 1.0) < 1e-15);

    auto const v = electron_spinor_initial(InitialElectron::spin_up_p1, Speed(0.4));
    Complex const chained = bilinear(v, {gamma(1), gamma(0), gamma(2)}, v);
    Complex const explicit_product = bilinear(v, gamma(1) * gamma(0) * gamma(2), v);
    REQUIRE(std::abs(chained - explicit_product) < 1e-15);

    // ubar gamma^0 u is the energy over m times ubar u
    REQUIRE_THAT(bilinear(v, gamma(0), v).real(),
                 WithinAbs(gamma_factor(Speed(0.4)), 1e-14));
}

TEST_CASE("Levi-Civita symbol", "[gamma]")
{
    CHECK(levi_civita(1, 2, 3) == 1);
    CHECK(levi_civita(2, 3, 1) == 1);
    CHECK(levi_civita(3, 1, 2) == 1);
    CHECK(levi_civita(2, 1, 3) == -1);
    CHECK(levi_civita(1, 1, 3) == 0);
    CHECK(levi_civita(1, 1, 1) == 0);
}

TEST_CASE("closed-form Møller bilinears at rest", "[gamma]")
{
    TwoSpinor const xi{Complex{0.6, 0.0}, Complex{0.0, 0.8}};
    Column2 const c = moller_bilinear_column(MollerBilinear::p1p_g0_p1, 0, Speed(0.0), 0.7);
    CHECK(std::abs(c[0] - 1.0) < 1e-15);
    CHECK(std::abs(c[1]) < 1e-15);
    Complex const value
        = closed_form_moller_bilinear(MollerBilinear::p1p_g0_p1, 0, xi, Speed(0.0), 0.7);
    CHECK(std::abs(value - std::conj(xi.a)) < 1e-15);
}

TEST_CASE("closed-form Møller bilinears match direct contraction", "[gamma][oracle]")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> beta(0.0, 0.95), theta(0.0, pi),
        chi(0.0, 2 * pi);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw)
    {
        Speed const s(beta(rng));
        double const th = theta(rng);
        TwoSpinor const xi = measurement_two_spinor(chi(rng), SpinConvention::moller_theta0);
        for (MollerBilinear kind : kAllMollerBilinears)
        {
            bool const spatial = legs(kind).spatial;
            for (int c = spatial ? 1 : 0; c <= (spatial ? 3 : 0); ++c)
            {
                Complex const closed = closed_form_moller_bilinear(kind, c, xi, s, th);
                Complex const direct = contracted_moller_bilinear(kind, c, xi, s, th);
                worst = std::max(worst, relative(closed, direct));
            }
        }
    }
    REQUIRE(worst <= 1e-10);
}

TEST_CASE("Møller bilinear component is validated", "[gamma]")
{
    REQUIRE_THROWS_AS(moller_bilinear_column(MollerBilinear::p1p_g0_p1, 1, Speed(0.2), 0.0),
                      DomainError);
    REQUIRE_THROWS_AS(moller_bilinear_column(MollerBilinear::p1p_gj_p1, 0, Speed(0.2), 0.0),
                      DomainError);
    REQUIRE_THROWS_AS(moller_bilinear_column(MollerBilinear::p1p_gj_p1, 4, Speed(0.2), 0.0),
                      DomainError);
}

TEST_CASE("a perturbed rho breaks the Møller oracle", "[gamma][oracle]")
{
    TwoSpinor const xi = measurement_two_spinor(0.4, SpinConvention::moller_theta0);
    Speed const s(0.5);
    double worst = 0.0;
    for (MollerBilinear kind : kAllMollerBilinears)
    {
        bool const spatial = legs(kind).spatial;
        for (int c = spatial ? 1 : 0; c <= (spatial ? 3 : 0); ++c)
        {
            Complex const closed = closed_form_moller_bilinear(kind, c, xi, s, 0.8, 1e-3);
            Complex const direct = contracted_moller_bilinear(kind, c, xi, s, 0.8);
            worst = std::max(worst, relative(closed, direct));
        }
    }
    REQUIRE(worst > 1e-5);
}

TEST_CASE("closed-form annihilation bilinears match direct contraction", "[gamma][oracle]")
{
    using K = AnnihilationBilinear;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> beta(0.0, 0.95);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw)
    {
        Speed const s(beta(rng));
        for (int i = 1; i <= 3; ++i)
        {
            worst = std::max(worst, relative(closed_form_annihilation_bilinear(K::g_i, {i, 1, 1}, s),
                                             contracted_annihilation_bilinear(K::g_i, {i, 1, 1}, s)));
            for (int j = 1; j <= 3; ++j)
            {
                worst = std::max(
                    worst, relative(closed_form_annihilation_bilinear(K::g_i_g0_g_j, {i, j, 1}, s),
                                    contracted_annihilation_bilinear(K::g_i_g0_g_j, {i, j, 1}, s)));
                for (int m = 1; m <= 3; ++m)
                {
                    worst = std::max(
                        worst,
                        relative(closed_form_annihilation_bilinear(K::g_i_g_m_g_j, {i, m, j}, s),
                                 contracted_annihilation_bilinear(K::g_i_g_m_g_j, {i, m, j}, s)));
                }
            }
        }
    }
    REQUIRE(worst <= 1e-10);
}

TEST_CASE("annihilation bilinear spot values", "[gamma]")
{
    using K = AnnihilationBilinear;
    Speed const s(0.6);
    double const n = 1.125;
    double const r2 = 1.0 / 9.0;
    // gamma^1 gamma^1 gamma^1 has no epsilon part; only the symmetric terms survive
    Complex const g111 = closed_form_annihilation_bilinear(K::g_i_g_m_g_j, {1, 1, 1}, s);
    CHECK(std::abs(g111) < 1e-15);
    Complex const g3 = closed_form_annihilation_bilinear(K::g_i, {3, 0, 0}, s);
    CHECK_THAT(g3.real(), WithinAbs(n * (1 - r2), 1e-15));
    Complex const g123 = closed_form_annihilation_bilinear(K::g_i_g_m_g_j, {1, 2, 3}, s);
    CHECK(std::abs(g123 - (-kI * n * (1 + r2))) < 1e-15);
    REQUIRE_THROWS_AS(closed_form_annihilation_bilinear(K::g_i, {0, 1, 1}, s), DomainError);
    REQUIRE_THROWS_AS(closed_form_annihilation_bilinear(K::g_i_g_m_g_j, {1, 2, 4}, s),
                      DomainError);
}
