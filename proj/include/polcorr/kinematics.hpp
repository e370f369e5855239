#pragma once

// Centre-of-momentum kinematics for e-e- -> e-e- and e+e- -> 2 gamma, in
// units of the electron mass (m = 1), together with the two-spinors, Dirac
// four-spinors and photon polarization vectors the amplitudes are built from.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "polcorr/errors.hpp"

namespace polcorr
{

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr Complex kI{0.0, 1.0};

/// Spinor constructors reject speeds this close to 1 because gamma and the
/// (p0 + m)/2m prefactor diverge there.
inline constexpr double kSpinorSpeedLimit = 1.0 - 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Speed as a fraction of c. Always in [0, 1].
 */
class Speed
{
  public:
    explicit Speed(double beta) : beta_(beta)
    {
        if (!(beta >= 0.0 && beta <= 1.0))
        {
            throw DomainError("speed beta must lie in [0, 1], got "
                              + std::to_string(beta));
        }
    }

    double beta() const noexcept { return beta_; }

    friend bool operator==(Speed, Speed) = default;

  private:
    double beta_;
};

/// Lorentz factor 1/sqrt(1 - beta^2). Rejects beta too close to 1.
inline double gamma_factor(Speed speed)
{
    double const b = speed.beta();
    if (b >= kSpinorSpeedLimit)
    {
        throw DomainError("gamma factor diverges as beta -> 1");
    }
    return 1.0 / std::sqrt(1.0 - b * b);
}

/// rho = gamma*beta/(gamma + 1) = beta/(1 + sqrt(1 - beta^2)).
/// The second form stays finite at beta = 1 where rho = 1.
inline double rho_of_beta(Speed speed)
{
    double const b = speed.beta();
    return b / (1.0 + std::sqrt(1.0 - b * b));
}

//---------------------------------------------------------------------------//
// Four-vectors
//---------------------------------------------------------------------------//
/// Contravariant four-vector (t, x, y, z), metric diag(+, -, -, -).
struct FourVector
{
    double t{0};
    double x{0};
    double y{0};
    double z{0};

    double operator[](int mu) const
    {
        switch (mu)
        {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            case 3: return z;
        }
        throw DomainError("four-vector index must be 0..3");
    }

    Vec3 spatial() const { return {x, y, z}; }

    friend FourVector operator+(FourVector const& a, FourVector const& b)
    {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend FourVector operator-(FourVector const& a, FourVector const& b)
    {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
};

inline double minkowski_dot(FourVector const& a, FourVector const& b)
{
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

inline double invariant_mass_squared(FourVector const& p)
{
    return minkowski_dot(p, p);
}

inline double dot(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

struct MollerMomenta
{
    FourVector p1;
    FourVector p2;
    FourVector p1_prime;
    FourVector p2_prime;
};

struct AnnihilationMomenta
{
    FourVector electron;
    FourVector positron;
    FourVector k1;
    FourVector k2;
};

/// Unit vector of the outgoing direction in the x-z plane, theta from z.
inline Vec3 scattering_direction(double theta)
{
    return {std::sin(theta), 0.0, std::cos(theta)};
}

/*!
 * Møller c.m. momenta: incoming electrons along +-y, outgoing pair in the
 * x-z plane at angle theta from the z-axis. All share energy gamma.
 */
inline MollerMomenta moller_momenta(Speed speed, double theta)
{
    double const g = gamma_factor(speed);
    double const p = g * speed.beta();
    Vec3 const n = scattering_direction(theta);
    return {
        {g, 0.0, p, 0.0},
        {g, 0.0, -p, 0.0},
        {g, p * n[0], 0.0, p * n[2]},
        {g, -p * n[0], 0.0, -p * n[2]},
    };
}

/*!
 * e+e- -> 2 gamma c.m. momenta: leptons along +-y, photons back to back in
 * the x-z plane with |k| = k0 = gamma.
 */
inline AnnihilationMomenta annihilation_momenta(Speed speed, double theta)
{
    double const g = gamma_factor(speed);
    double const p = g * speed.beta();
    Vec3 const n = scattering_direction(theta);
    return {
        {g, 0.0, p, 0.0},
        {g, 0.0, -p, 0.0},
        {g, g * n[0], 0.0, g * n[2]},
        {g, -g * n[0], 0.0, -g * n[2]},
    };
}

//---------------------------------------------------------------------------//
// Spinors
//---------------------------------------------------------------------------//
struct TwoSpinor
{
    Complex a;  //!< upper component
    Complex b;  //!< lower component

    double norm_squared() const { return std::norm(a) + std::norm(b); }
};

/// xi^dagger eta
inline Complex inner(TwoSpinor const& xi, TwoSpinor const& eta)
{
    return std::conj(xi.a) * eta.a + std::conj(xi.b) * eta.b;
}

inline constexpr TwoSpinor kSpinUp{1.0, 0.0};
inline constexpr TwoSpinor kSpinDown{0.0, 1.0};

/// Measurement spinor parametrizations used by the two Møller set-ups.
enum class SpinConvention
{
    moller_theta0,   //!< (e^{-i chi/2}, e^{i chi/2})/sqrt2, chi from x-axis
    unpolarized_z,   //!< (-i cos chi/2, sin chi/2), chi from z-axis
};

inline TwoSpinor measurement_two_spinor(double chi, SpinConvention convention)
{
    if (convention == SpinConvention::moller_theta0)
    {
        double const s = std::numbers::sqrt2 / 2;
        return {s * std::polar(1.0, -chi / 2), s * std::polar(1.0, chi / 2)};
    }
    return {-kI * std::cos(chi / 2), Complex{std::sin(chi / 2)}};
}

/// sigma . n applied to a two-spinor, for real n.
inline TwoSpinor apply_sigma(Vec3 const& n, TwoSpinor const& xi)
{
    // sigma.n = [[n3, n1 - i n2], [n1 + i n2, -n3]]
    Complex const minus{n[0], -n[1]};
    Complex const plus{n[0], n[1]};
    return {n[2] * xi.a + minus * xi.b, plus * xi.a - n[2] * xi.b};
}

/*!
 * Dirac four-spinor in the Dirac–Pauli representation.
 *
 * The ((p0 + m)/2m)^{1/2} prefactor is kept apart from the column so the
 * column structure stays visible; `components()` applies it.
 */
struct DiracSpinor
{
    std::array<Complex, 4> column{};
    double prefactor{1.0};

    std::array<Complex, 4> components() const
    {
        return {prefactor * column[0], prefactor * column[1],
                prefactor * column[2], prefactor * column[3]};
    }
};

inline double spinor_prefactor(Speed speed)
{
    return std::sqrt((gamma_factor(speed) + 1.0) / 2.0);
}

/*!
 * Positive-energy spinor for a particle moving along direction `n` with
 * speed beta and rest-frame spin `xi`:
 * (xi, rho sigma.n xi) times the prefactor.
 */
inline DiracSpinor electron_spinor(TwoSpinor const& xi, Vec3 const& n,
                                   Speed speed)
{
    double const pref = spinor_prefactor(speed);
    double const r = rho_of_beta(speed);
    TwoSpinor const lower = apply_sigma(n, xi);
    return {{xi.a, xi.b, r * lower.a, r * lower.b}, pref};
}

enum class InitialElectron
{
    spin_up_p1,    //!< momentum +y, spin up along z
    spin_down_p2,  //!< momentum -y, spin down along z
};

/// Incoming electron of either beam, general spin state.
inline DiracSpinor incoming_spinor(InitialElectron which, TwoSpinor const& xi,
                                   Speed speed)
{
    Vec3 const n = which == InitialElectron::spin_up_p1 ? Vec3{0, 1, 0}
                                                        : Vec3{0, -1, 0};
    return electron_spinor(xi, n, speed);
}

/// The polarized initial electrons: (1,0, 0,i rho) and (0,1, i rho,0).
inline DiracSpinor electron_spinor_initial(InitialElectron which, Speed speed)
{
    return incoming_spinor(which,
                           which == InitialElectron::spin_up_p1 ? kSpinUp
                                                                : kSpinDown,
                           speed);
}

enum class FinalElectron
{
    p1_prime,
    p2_prime,
};

/// Outgoing Møller electrons: lower block +-(sigma.p1')/(p0+m) xi.
inline DiracSpinor electron_spinor_final(FinalElectron which,
                                         TwoSpinor const& xi, Speed speed,
                                         double theta)
{
    Vec3 n = scattering_direction(theta);
    if (which == FinalElectron::p2_prime)
    {
        n = {-n[0], -n[1], -n[2]};
    }
    return electron_spinor(xi, n, speed);
}

/// Positron of the annihilation set-up: (i rho (0,1), (1,0)).
inline DiracSpinor positron_spinor(Speed speed)
{
    double const pref = spinor_prefactor(speed);
    double const r = rho_of_beta(speed);
    return {{0.0, kI * r, 1.0, 0.0}, pref};
}

//---------------------------------------------------------------------------//
// Photon polarization
//---------------------------------------------------------------------------//
struct PhotonPolarization
{
    double e1{0};
    double e2{0};
    double e3{0};

    Vec3 vec() const { return {e1, e2, e3}; }
};

/// (-cos theta cos chi, sin chi, sin theta cos chi): transverse to k(theta).
inline PhotonPolarization photon_polarization(double chi, double theta)
{
    return {-std::cos(theta) * std::cos(chi), std::sin(chi),
            std::sin(theta) * std::cos(chi)};
}

} // namespace polcorr
