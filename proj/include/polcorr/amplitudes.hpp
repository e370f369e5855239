#pragma once

// Leading-order amplitudes for polarized Møller scattering and e+e- -> 2 gamma,
// extraction of the outgoing two-particle polarization states, and the
// initial-spin sum for unpolarized Møller scattering.
//
// Amplitudes are defined only up to an overall constant; states are always
// normalized and probabilities are ratios, so the constant never matters.

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "polcorr/errors.hpp"
#include "polcorr/gamma.hpp"
#include "polcorr/kinematics.hpp"

namespace polcorr
{

/// Denominators below this are treated as a forward/backward singularity.
inline constexpr double kDegenerateDenominator = 1e-14;

enum class StateBasis
{
    spin_z,          //!< |up>, |down> along z for each electron
    photon_linear,   //!< e(chi = pi/2), e(chi = 0) of each photon
};

//---------------------------------------------------------------------------//
/*!
 * Two-particle polarization state over a 2x2 product basis.
 *
 * coeff(a, b) multiplies |a>_1 |b>_2. For spins, index 0 is up and 1 is
 * down. For photons, index 0 is the polarization e(chi = pi/2) and 1 is
 * e(chi = 0); at theta = pi/2 these are the y and z axes.
 */
struct EntangledState
{
    std::array<Complex, 4> coeffs{};
    StateBasis basis{StateBasis::spin_z};

    Complex& coeff(int a, int b)
    {
        return coeffs[static_cast<std::size_t>(2 * a + b)];
    }
    Complex coeff(int a, int b) const
    {
        return coeffs[static_cast<std::size_t>(2 * a + b)];
    }

    double norm() const
    {
        double s = 0;
        for (auto const& c : coeffs)
            s += std::norm(c);
        return std::sqrt(s);
    }

    EntangledState normalized() const
    {
        double const n = norm();
        if (!(n > 0))
            throw DegenerateKinematics("cannot normalize a null state");
        EntangledState r = *this;
        for (auto& c : r.coeffs)
            c /= n;
        return r;
    }
};

/// |<a|b>|^2 for normalized states.
inline double fidelity(EntangledState const& a, EntangledState const& b)
{
    Complex overlap{};
    for (std::size_t k = 0; k < 4; ++k)
        overlap += std::conj(a.coeffs[k]) * b.coeffs[k];
    return std::norm(overlap);
}

/// || xi1^dagger xi2^dagger |psi> ||^2
inline double spin_projection_probability(EntangledState const& state,
                                          TwoSpinor const& xi1,
                                          TwoSpinor const& xi2)
{
    std::array<Complex, 2> const x1{xi1.a, xi1.b};
    std::array<Complex, 2> const x2{xi2.a, xi2.b};
    Complex amp{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            amp += std::conj(x1[static_cast<std::size_t>(a)])
                   * std::conj(x2[static_cast<std::size_t>(b)])
                   * state.coeff(a, b);
    return std::norm(amp);
}

/// || (sin chi1, cos chi1)_1 (sin chi2, cos chi2)_2 |phi> ||^2
inline double polarization_projection_probability(EntangledState const& state,
                                                  double chi1, double chi2)
{
    std::array<double, 2> const p1{std::sin(chi1), std::cos(chi1)};
    std::array<double, 2> const p2{std::sin(chi2), std::cos(chi2)};
    Complex amp{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            amp += p1[static_cast<std::size_t>(a)]
                   * p2[static_cast<std::size_t>(b)] * state.coeff(a, b);
    return std::norm(amp);
}

//---------------------------------------------------------------------------//
// Møller scattering
//---------------------------------------------------------------------------//
/// Lorentz-contracted current product ubar_a gamma^mu u_b ubar_c gamma_mu u_d.
inline Complex current_product(DiracSpinor const& a, DiracSpinor const& b,
                               DiracSpinor const& c, DiracSpinor const& d)
{
    Complex sum{};
    for (int mu = 0; mu < 4; ++mu)
        sum += metric(mu) * bilinear(a, gamma(mu), b) * bilinear(c, gamma(mu), d);
    return sum;
}

/*!
 * Direct minus exchange Møller amplitude from explicit spinors.
 *
 * A = [ubar(p1') g^mu u(p1) ubar(p2') g_mu u(p2)] / (p1' - p1)^2
 *   - [ubar(p2') g^mu u(p1) ubar(p1') g_mu u(p2)] / (p2' - p1)^2
 */
inline Complex moller_amplitude(DiracSpinor const& u1, DiracSpinor const& u2,
                                DiracSpinor const& u1p, DiracSpinor const& u2p,
                                MollerMomenta const& k)
{
    double const direct_den = invariant_mass_squared(k.p1_prime - k.p1);
    double const exchange_den = invariant_mass_squared(k.p2_prime - k.p1);
    if (std::abs(direct_den) < kDegenerateDenominator
        || std::abs(exchange_den) < kDegenerateDenominator)
    {
        throw DegenerateKinematics(
            "Møller propagator denominator vanishes (beta = 0 or "
            "forward/backward scattering)");
    }
    return current_product(u1p, u1, u2p, u2) / direct_den
           - current_product(u2p, u1, u1p, u2) / exchange_den;
}

inline void require_open_speed(Speed speed, char const* what)
{
    if (speed.beta() <= 0.0)
    {
        throw DegenerateKinematics(std::string(what)
                                   + ": propagators are singular at beta = 0");
    }
}

/// Polarized Møller amplitude with outgoing spin states xi1, xi2.
inline Complex moller_amplitude(TwoSpinor const& xi1, TwoSpinor const& xi2,
                                Speed speed, double theta)
{
    require_open_speed(speed, "moller_amplitude");
    return moller_amplitude(
        electron_spinor_initial(InitialElectron::spin_up_p1, speed),
        electron_spinor_initial(InitialElectron::spin_down_p2, speed),
        electron_spinor_final(FinalElectron::p1_prime, xi1, speed, theta),
        electron_spinor_final(FinalElectron::p2_prime, xi2, speed, theta),
        moller_momenta(speed, theta));
}

/*!
 * Normalized outgoing spin state of polarized Møller scattering.
 *
 * The amplitude is antilinear in the measured spinors, so evaluating it on
 * the basis spinors yields the state coefficients directly.
 */
inline EntangledState extract_moller_state(Speed speed, double theta)
{
    std::array<TwoSpinor, 2> const basis{kSpinUp, kSpinDown};
    EntangledState s;
    s.basis = StateBasis::spin_z;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            s.coeff(a, b) = moller_amplitude(basis[static_cast<std::size_t>(a)],
                                             basis[static_cast<std::size_t>(b)],
                                             speed, theta);
    return s.normalized();
}

/// The theta = 0 state in closed form:
/// [(1+6r^2+r^4)(|du> - |ud>) + 4i r^2 (|dd> + |uu>)] / (sqrt2 N).
inline EntangledState closed_form_moller_state_theta0(Speed speed)
{
    double const r2 = std::pow(rho_of_beta(speed), 2);
    double const singlet = 1.0 + 6.0 * r2 + r2 * r2;
    Complex const triplet = 4.0 * kI * r2;
    EntangledState s;
    s.basis = StateBasis::spin_z;
    s.coeff(1, 0) = singlet;
    s.coeff(0, 1) = -singlet;
    s.coeff(1, 1) = triplet;
    s.coeff(0, 0) = triplet;
    return s.normalized();
}

/// (|du> - |ud>)/sqrt2, the theta = pi/2 state at every speed.
inline EntangledState spin_singlet()
{
    EntangledState s;
    s.basis = StateBasis::spin_z;
    s.coeff(1, 0) = 1.0;
    s.coeff(0, 1) = -1.0;
    return s.normalized();
}

/*!
 * Initial-spin-summed |A|^2 for unpolarized Møller scattering at
 * theta = pi/2 (outgoing electrons along +-x), with measured outgoing spin
 * states xi1, xi2. Proportional to the closed form F[chi1, chi2].
 */
inline double moller_unpolarized_weight(TwoSpinor const& xi1,
                                        TwoSpinor const& xi2, Speed speed)
{
    require_open_speed(speed, "moller_unpolarized_weight");
    double const theta = std::numbers::pi / 2;
    MollerMomenta const k = moller_momenta(speed, theta);
    DiracSpinor const u1p
        = electron_spinor_final(FinalElectron::p1_prime, xi1, speed, theta);
    DiracSpinor const u2p
        = electron_spinor_final(FinalElectron::p2_prime, xi2, speed, theta);
    std::array<TwoSpinor, 2> const spins{kSpinUp, kSpinDown};
    double sum = 0;
    for (auto const& s1 : spins)
        for (auto const& s2 : spins)
        {
            DiracSpinor const u1
                = incoming_spinor(InitialElectron::spin_up_p1, s1, speed);
            DiracSpinor const u2
                = incoming_spinor(InitialElectron::spin_down_p2, s2, speed);
            sum += std::norm(moller_amplitude(u1, u2, u1p, u2p, k));
        }
    return sum;
}

//---------------------------------------------------------------------------//
// Pair annihilation
//---------------------------------------------------------------------------//
inline FourVector polarization_four_vector(PhotonPolarization const& e)
{
    return {0.0, e.e1, e.e2, e.e3};
}

/*!
 * Full leading-order e+e- -> 2 gamma amplitude
 *
 *   vbar [ e2/ k1/ e1/ / (2 p1.k1) + e1/ k2/ e2/ / (2 p1.k2)
 *          - e2/ (p1.e1) / (p1.k1) - e1/ (p1.e2) / (p1.k2) ] u
 *
 * with Minkowski products throughout. The p1.e terms come from
 * (p1/ + m) e1/ u = 2 (p1.e1) u.
 */
inline Complex annihilation_amplitude(PhotonPolarization const& e1,
                                      PhotonPolarization const& e2,
                                      Speed speed, double theta)
{
    AnnihilationMomenta const k = annihilation_momenta(speed, theta);
    double const pk1 = minkowski_dot(k.electron, k.k1);
    double const pk2 = minkowski_dot(k.electron, k.k2);
    if (std::abs(pk1) < kDegenerateDenominator
        || std::abs(pk2) < kDegenerateDenominator)
    {
        throw DegenerateKinematics("annihilation propagator denominator vanishes");
    }
    FourVector const eps1 = polarization_four_vector(e1);
    FourVector const eps2 = polarization_four_vector(e2);
    Matrix4 const s1 = slash(eps1);
    Matrix4 const s2 = slash(eps2);

    Matrix4 m = (s2 * slash(k.k1) * s1) * Complex{1.0 / (2.0 * pk1)};
    m += (s1 * slash(k.k2) * s2) * Complex{1.0 / (2.0 * pk2)};
    m -= s2 * Complex{minkowski_dot(k.electron, eps1) / pk1};
    m -= s1 * Complex{minkowski_dot(k.electron, eps2) / pk2};

    return bilinear(positron_spinor(speed), m,
                    electron_spinor_initial(InitialElectron::spin_up_p1, speed));
}

/*!
 * Reduced amplitude
 *   -i (1 + rho^2) n.(e1 x e2) + beta (1 - rho^2)(e1_y e2_z + e1_z e2_y),
 * n the direction of k1. Equals the full amplitude up to a speed-dependent
 * constant.
 */
inline Complex reduced_annihilation_amplitude(PhotonPolarization const& e1,
                                              PhotonPolarization const& e2,
                                              Speed speed, double theta)
{
    double const r2 = std::pow(rho_of_beta(speed), 2);
    Vec3 const n = scattering_direction(theta);
    double const triple = dot(n, cross(e1.vec(), e2.vec()));
    double const sym = e1.e2 * e2.e3 + e1.e3 * e2.e2;
    return -kI * (1.0 + r2) * triple + speed.beta() * (1.0 - r2) * sym;
}

/// Photon polarization state on the basis e(pi/2), e(0) at angle theta.
inline EntangledState extract_photon_state(Speed speed, double theta)
{
    std::array<PhotonPolarization, 2> const basis{
        photon_polarization(std::numbers::pi / 2, theta),
        photon_polarization(0.0, theta)};
    EntangledState s;
    s.basis = StateBasis::photon_linear;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            s.coeff(a, b)
                = annihilation_amplitude(basis[static_cast<std::size_t>(a)],
                                         basis[static_cast<std::size_t>(b)],
                                         speed, theta);
    return s.normalized();
}

/// The theta = pi/2 photon state in closed form:
/// [i(1+r^2)(|yz> - |zy>) - beta(1-r^2)(|yz> + |zy>)] / (sqrt2 N).
inline EntangledState closed_form_photon_state_theta90(Speed speed)
{
    double const r2 = std::pow(rho_of_beta(speed), 2);
    Complex const anti = kI * (1.0 + r2);
    double const sym = -speed.beta() * (1.0 - r2);
    EntangledState s;
    s.basis = StateBasis::photon_linear;
    s.coeff(0, 1) = anti + sym;
    s.coeff(1, 0) = -anti + sym;
    return s.normalized();
}

/// (|yz> - |zy>)/sqrt2 in the photon basis.
inline EntangledState photon_antisymmetric_state()
{
    EntangledState s;
    s.basis = StateBasis::photon_linear;
    s.coeff(0, 1) = 1.0;
    s.coeff(1, 0) = -1.0;
    return s.normalized();
}

} // namespace polcorr
