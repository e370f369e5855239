#pragma once

// Dirac matrices (Dirac–Pauli representation, metric diag(+,-,-,-)),
// spinor bilinears by direct contraction, and the closed-form bilinears of
// the Møller and pair-annihilation processes used as independent oracles.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>

#include "polcorr/errors.hpp"
#include "polcorr/kinematics.hpp"

namespace polcorr
{

using Spinor4 = std::array<Complex, 4>;

//---------------------------------------------------------------------------//
/*!
 * Dense 4x4 complex matrix, row-major.
 */
class Matrix4
{
  public:
    constexpr Matrix4() = default;

    static constexpr Matrix4 identity()
    {
        Matrix4 m;
        for (int i = 0; i < 4; ++i)
        {
            m(i, i) = 1.0;
        }
        return m;
    }

    constexpr Complex& operator()(int row, int col)
    {
        return data_[static_cast<std::size_t>(4 * row + col)];
    }
    constexpr Complex const& operator()(int row, int col) const
    {
        return data_[static_cast<std::size_t>(4 * row + col)];
    }

    Matrix4 adjoint() const
    {
        Matrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Complex trace() const
    {
        return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
    }

    /// Largest entry modulus.
    double max_abs() const
    {
        double m = 0;
        for (auto const& z : data_)
            m = std::max(m, std::abs(z));
        return m;
    }

    Matrix4& operator+=(Matrix4 const& o)
    {
        for (std::size_t k = 0; k < 16; ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    Matrix4& operator-=(Matrix4 const& o)
    {
        for (std::size_t k = 0; k < 16; ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    Matrix4& operator*=(Complex s)
    {
        for (auto& z : data_)
            z *= s;
        return *this;
    }

    friend Matrix4 operator+(Matrix4 a, Matrix4 const& b) { return a += b; }
    friend Matrix4 operator-(Matrix4 a, Matrix4 const& b) { return a -= b; }
    friend Matrix4 operator*(Complex s, Matrix4 a) { return a *= s; }
    friend Matrix4 operator*(Matrix4 a, Complex s) { return a *= s; }

    friend Matrix4 operator*(Matrix4 const& a, Matrix4 const& b)
    {
        Matrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
            {
                Complex const aik = a(i, k);
                if (aik == Complex{})
                    continue;
                for (int j = 0; j < 4; ++j)
                    r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend Spinor4 operator*(Matrix4 const& a, Spinor4 const& v)
    {
        Spinor4 r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                r[static_cast<std::size_t>(i)]
                    += a(i, j) * v[static_cast<std::size_t>(j)];
        return r;
    }

  private:
    std::array<Complex, 16> data_{};
};

namespace detail
{
inline std::array<Matrix4, 4> make_gamma_table()
{
    std::array<Matrix4, 4> g;
    // gamma^0 = diag(1, 1, -1, -1)
    g[0](0, 0) = 1;
    g[0](1, 1) = 1;
    g[0](2, 2) = -1;
    g[0](3, 3) = -1;
    // gamma^i = [[0, sigma_i], [-sigma_i, 0]]
    std::array<std::array<Complex, 4>, 3> const sigma{{
        {0, 1, 1, 0},
        {0, -kI, kI, 0},
        {1, 0, 0, -1},
    }};
    for (int i = 0; i < 3; ++i)
    {
        auto const& s = sigma[static_cast<std::size_t>(i)];
        Matrix4& m = g[static_cast<std::size_t>(i + 1)];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
            {
                Complex const v = s[static_cast<std::size_t>(2 * r + c)];
                m(r, c + 2) = v;
                m(r + 2, c) = -v;
            }
    }
    return g;
}
} // namespace detail

/// gamma^mu, mu in 0..3.
inline Matrix4 const& gamma(int mu)
{
    static std::array<Matrix4, 4> const table = detail::make_gamma_table();
    if (mu < 0 || mu > 3)
    {
        throw DomainError("gamma index must be 0..3");
    }
    return table[static_cast<std::size_t>(mu)];
}

/// Diagonal metric g^{mu mu}.
inline constexpr double metric(int mu)
{
    return mu == 0 ? 1.0 : -1.0;
}

/// k-slash = gamma^mu k_mu = k^0 gamma^0 - k.gamma
inline Matrix4 slash(FourVector const& k)
{
    Matrix4 r;
    for (int mu = 0; mu < 4; ++mu)
        r += (metric(mu) * k[mu]) * gamma(mu);
    return r;
}

inline Matrix4 ordered_product(std::span<Matrix4 const> factors)
{
    Matrix4 r = Matrix4::identity();
    for (auto const& f : factors)
        r = r * f;
    return r;
}

/// ubar Gamma u with ubar = u^dagger gamma^0 and Gamma the ordered product.
inline Complex bilinear(DiracSpinor const& left, Matrix4 const& gamma_product,
                        DiracSpinor const& right)
{
    Spinor4 const l = left.components();
    Spinor4 const r = gamma(0) * (gamma_product * right.components());
    Complex sum{};
    for (std::size_t i = 0; i < 4; ++i)
        sum += std::conj(l[i]) * r[i];
    return sum;
}

inline Complex bilinear(DiracSpinor const& left,
                        std::span<Matrix4 const> gammas,
                        DiracSpinor const& right)
{
    return bilinear(left, ordered_product(gammas), right);
}

inline Complex bilinear(DiracSpinor const& left,
                        std::initializer_list<Matrix4> gammas,
                        DiracSpinor const& right)
{
    return bilinear(left, std::span<Matrix4 const>(gammas.begin(), gammas.size()),
                    right);
}

//---------------------------------------------------------------------------//
// Closed-form Møller bilinears
//---------------------------------------------------------------------------//
/// The eight bilinears of the Møller amplitude, named ubar(final) G u(initial).
enum class MollerBilinear
{
    p1p_g0_p1,
    p2p_g0_p2,
    p1p_g0_p2,
    p2p_g0_p1,
    p1p_gj_p1,
    p2p_gj_p2,
    p1p_gj_p2,
    p2p_gj_p1,
};

inline constexpr std::array<MollerBilinear, 8> kAllMollerBilinears{
    MollerBilinear::p1p_g0_p1, MollerBilinear::p2p_g0_p2,
    MollerBilinear::p1p_g0_p2, MollerBilinear::p2p_g0_p1,
    MollerBilinear::p1p_gj_p1, MollerBilinear::p2p_gj_p2,
    MollerBilinear::p1p_gj_p2, MollerBilinear::p2p_gj_p1,
};

struct MollerBilinearLegs
{
    FinalElectron final_leg;
    InitialElectron initial_leg;
    bool spatial;  //!< gamma^j (j = 1..3) instead of gamma^0
};

inline constexpr MollerBilinearLegs legs(MollerBilinear kind)
{
    using F = FinalElectron;
    using I = InitialElectron;
    switch (kind)
    {
        case MollerBilinear::p1p_g0_p1: return {F::p1_prime, I::spin_up_p1, false};
        case MollerBilinear::p2p_g0_p2: return {F::p2_prime, I::spin_down_p2, false};
        case MollerBilinear::p1p_g0_p2: return {F::p1_prime, I::spin_down_p2, false};
        case MollerBilinear::p2p_g0_p1: return {F::p2_prime, I::spin_up_p1, false};
        case MollerBilinear::p1p_gj_p1: return {F::p1_prime, I::spin_up_p1, true};
        case MollerBilinear::p2p_gj_p2: return {F::p2_prime, I::spin_down_p2, true};
        case MollerBilinear::p1p_gj_p2: return {F::p1_prime, I::spin_down_p2, true};
        case MollerBilinear::p2p_gj_p1: return {F::p2_prime, I::spin_up_p1, true};
    }
    throw DomainError("unknown Møller bilinear");
}

/// Two-component column c such that the bilinear equals xi^dagger c.
using Column2 = std::array<Complex, 2>;

/*!
 * Column of a closed-form Møller bilinear before contraction with
 * xi^dagger of the outgoing electron.
 *
 * `component` is 0 for the gamma^0 kinds and j = 1..3 for the gamma^j kinds.
 * `rho_shift` perturbs rho (diagnostics only).
 *
 * The gamma^3 column of ubar(p1') gamma^j u(p1) is rho (cos, -i + sin);
 * the sign of its upper entry differs from the form usually quoted and is
 * the one consistent with direct contraction and with the theta = 0 state.
 */
inline Column2 moller_bilinear_column(MollerBilinear kind, int component,
                                      Speed speed, double theta,
                                      double rho_shift = 0.0)
{
    bool const spatial = legs(kind).spatial;
    if (spatial ? (component < 1 || component > 3) : component != 0)
    {
        throw DomainError("bad component index for Møller bilinear");
    }
    double const n = (gamma_factor(speed) + 1.0) / 2.0;
    double const r = rho_of_beta(speed) + rho_shift;
    double const r2 = r * r;
    double const s = std::sin(theta);
    double const c = std::cos(theta);
    Complex const i = kI;

    auto scaled = [&](Complex top, Complex bottom, Complex factor) {
        return Column2{n * factor * top, n * factor * bottom};
    };

    switch (kind)
    {
        case MollerBilinear::p1p_g0_p1:
            return scaled(1.0 + i * r2 * s, -i * r2 * c, 1.0);
        case MollerBilinear::p2p_g0_p2:
            return scaled(-i * r2 * c, 1.0 - i * r2 * s, 1.0);
        case MollerBilinear::p1p_g0_p2:
            return scaled(i * r2 * c, 1.0 + i * r2 * s, 1.0);
        case MollerBilinear::p2p_g0_p1:
            return scaled(1.0 - i * r2 * s, i * r2 * c, 1.0);
        case MollerBilinear::p1p_gj_p1:
            switch (component)
            {
                case 1: return scaled(i + s, -c, r);
                case 2: return scaled(-i + s, -c, i * r);
                default: return scaled(c, -i + s, r);
            }
        case MollerBilinear::p2p_gj_p2:
            switch (component)
            {
                case 1: return scaled(-c, i - s, r);
                case 2: return scaled(c, i + s, i * r);
                default: return scaled(i + s, -c, r);
            }
        case MollerBilinear::p1p_gj_p2:
            switch (component)
            {
                case 1: return scaled(c, i + s, r);
                case 2: return scaled(-c, i - s, i * r);
                default: return scaled(i - s, c, r);
            }
        case MollerBilinear::p2p_gj_p1:
            switch (component)
            {
                case 1: return scaled(i - s, c, r);
                case 2: return scaled(i + s, -c, -i * r);
                default: return scaled(c, i + s, -r);
            }
    }
    throw DomainError("unknown Møller bilinear");
}

inline Complex closed_form_moller_bilinear(MollerBilinear kind, int component,
                                           TwoSpinor const& xi, Speed speed,
                                           double theta,
                                           double rho_shift = 0.0)
{
    Column2 const col
        = moller_bilinear_column(kind, component, speed, theta, rho_shift);
    return std::conj(xi.a) * col[0] + std::conj(xi.b) * col[1];
}

/// The same bilinear by direct contraction of the four-spinors.
inline Complex contracted_moller_bilinear(MollerBilinear kind, int component,
                                          TwoSpinor const& xi, Speed speed,
                                          double theta)
{
    auto const l = legs(kind);
    return bilinear(electron_spinor_final(l.final_leg, xi, speed, theta),
                    gamma(component),
                    electron_spinor_initial(l.initial_leg, speed));
}

//---------------------------------------------------------------------------//
// Closed-form annihilation bilinears, vbar Gamma u
//---------------------------------------------------------------------------//
enum class AnnihilationBilinear
{
    g_i_g0_g_j,  //!< vbar gamma^i gamma^0 gamma^j u
    g_i,         //!< vbar gamma^i u
    g_i_g_m_g_j, //!< vbar gamma^i gamma^m gamma^j u
};

/// Levi-Civita symbol on 1-based spatial indices, epsilon_123 = +1.
inline constexpr int levi_civita(int i, int j, int k)
{
    return (i - j) * (j - k) * (k - i) / 2;
}

inline constexpr int kronecker(int i, int j)
{
    return i == j ? 1 : 0;
}

/*!
 * Closed-form vbar Gamma u for the pair-annihilation spinors.
 *
 * Spatial indices are 1-based. For `g_i` only `indices[0]` is read; for
 * `g_i_g0_g_j` indices[0], indices[1] are (i, j); for `g_i_g_m_g_j` they
 * are (i, m, j).
 */
inline Complex closed_form_annihilation_bilinear(AnnihilationBilinear kind,
                                                 std::array<int, 3> indices,
                                                 Speed speed,
                                                 double rho_shift = 0.0)
{
    int const used = kind == AnnihilationBilinear::g_i           ? 1
                     : kind == AnnihilationBilinear::g_i_g0_g_j ? 2
                                                                 : 3;
    for (int k = 0; k < used; ++k)
    {
        int const idx = indices[static_cast<std::size_t>(k)];
        if (idx < 1 || idx > 3)
            throw DomainError("spatial index must be 1..3");
    }
    double const n = (gamma_factor(speed) + 1.0) / 2.0;
    double const r = rho_of_beta(speed) + rho_shift;
    double const r2 = r * r;
    auto const [i, a, b] = indices;

    switch (kind)
    {
        case AnnihilationBilinear::g_i_g0_g_j:
            return n * 2.0 * kI * static_cast<double>(levi_civita(i, a, 2)) * r;
        case AnnihilationBilinear::g_i:
            return n * (1.0 - r2) * kronecker(i, 3);
        case AnnihilationBilinear::g_i_g_m_g_j: {
            int const m = a;
            int const j = b;
            double const sym = -kronecker(m, j) * kronecker(i, 3)
                               - kronecker(m, i) * kronecker(j, 3)
                               + kronecker(i, j) * kronecker(m, 3);
            return n * sym * (1.0 - r2)
                   - kI * n * (1.0 + r2) * static_cast<double>(levi_civita(i, m, j));
        }
    }
    throw DomainError("unknown annihilation bilinear");
}

inline Complex contracted_annihilation_bilinear(AnnihilationBilinear kind,
                                                std::array<int, 3> indices,
                                                Speed speed)
{
    Matrix4 product;
    switch (kind)
    {
        case AnnihilationBilinear::g_i_g0_g_j:
            product = gamma(indices[0]) * gamma(0) * gamma(indices[1]);
            break;
        case AnnihilationBilinear::g_i:
            product = gamma(indices[0]);
            break;
        case AnnihilationBilinear::g_i_g_m_g_j:
            product = gamma(indices[0]) * gamma(indices[1]) * gamma(indices[2]);
            break;
    }
    DiracSpinor const u
        = electron_spinor_initial(InitialElectron::spin_up_p1, speed);
    return bilinear(positron_spinor(speed), product, u);
}

} // namespace polcorr
