#pragma once

// Closed-form joint and single-detector polarization-correlation
// probabilities for the six scenarios, and the marginalization and
// completeness identities they obey.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "polcorr/errors.hpp"
#include "polcorr/kinematics.hpp"

namespace polcorr
{

enum class Scenario
{
    MollerPolarizedTheta0,
    MollerPolarizedThetaPi2,
    PhotonPolarized,
    MollerUnpolarized,
    PhotonUnpolarized,
    Spin0Annihilation,
};

inline constexpr std::array<Scenario, 6> kAllScenarios{
    Scenario::MollerPolarizedTheta0, Scenario::MollerPolarizedThetaPi2,
    Scenario::PhotonPolarized,       Scenario::MollerUnpolarized,
    Scenario::PhotonUnpolarized,     Scenario::Spin0Annihilation,
};

/*!
 * Per-scenario constants.
 *
 * `complement_shift` maps a measurement direction to the orthogonal
 * outcome: pi for spin-1/2 (chi + pi is the opposite spinor), pi/2 for
 * linear photon polarization. `angle_period` is the period of the joint
 * probability in each angle.
 */
struct ScenarioTraits
{
    std::string_view name;
    std::string_view cli_name;
    bool photons;
    double complement_shift;
    double angle_period;
};

inline constexpr ScenarioTraits traits(Scenario s)
{
    constexpr double pi = std::numbers::pi;
    switch (s)
    {
        case Scenario::MollerPolarizedTheta0:
            return {"MollerPolarizedTheta0", "moller-theta0", false, pi, 2 * pi};
        case Scenario::MollerPolarizedThetaPi2:
            return {"MollerPolarizedThetaPi2", "moller-theta90", false, pi, 2 * pi};
        case Scenario::PhotonPolarized:
            return {"PhotonPolarized", "photon-polarized", true, pi / 2, pi};
        case Scenario::MollerUnpolarized:
            return {"MollerUnpolarized", "moller-unpolarized", false, pi, 2 * pi};
        case Scenario::PhotonUnpolarized:
            return {"PhotonUnpolarized", "photon-unpolarized", true, pi / 2, pi};
        case Scenario::Spin0Annihilation:
            return {"Spin0Annihilation", "spin0", true, pi / 2, pi};
    }
    throw DomainError("unknown scenario");
}

/// Accepts either the CLI name or the enum name.
inline std::optional<Scenario> scenario_from_name(std::string_view name)
{
    for (Scenario s : kAllScenarios)
    {
        auto const t = traits(s);
        if (name == t.name || name == t.cli_name)
            return s;
    }
    return std::nullopt;
}

enum class Detector
{
    first,
    second,
};

namespace detail
{
inline double sq(double x)
{
    return x * x;
}

/// 1 + 6 rho^2 + rho^4 and its companion 4 rho^2
struct MollerTheta0Weights
{
    double singlet;
    double triplet;
    double norm2;  //!< singlet^2 + triplet^2
};

inline MollerTheta0Weights moller_theta0_weights(Speed speed)
{
    double const r2 = sq(rho_of_beta(speed));
    double const a = 1.0 + 6.0 * r2 + r2 * r2;
    double const b = 4.0 * r2;
    return {a, b, a * a + b * b};
}

/// (1 + rho^2), beta (1 - rho^2)
struct PhotonWeights
{
    double anti;
    double sym;
    double norm2;
};

inline PhotonWeights photon_weights(Speed speed)
{
    double const r2 = sq(rho_of_beta(speed));
    double const a = 1.0 + r2;
    double const b = speed.beta() * (1.0 - r2);
    return {a, b, a * a + b * b};
}

/// 4 beta^2 (1 - beta^2)
inline double pair_factor(Speed speed)
{
    double const b2 = sq(speed.beta());
    return 4.0 * b2 * (1.0 - b2);
}

inline double pair_amplitude(Speed speed, double chi1, double chi2)
{
    return std::cos(chi1 - chi2)
           - 2.0 * sq(speed.beta()) * std::cos(chi1) * std::cos(chi2);
}
} // namespace detail

/*!
 * Unnormalized unpolarized Møller weight
 * F = (1-b^2)(1+3b^2) sin^2((chi1-chi2)/2) + b^4 cos^2((chi1+chi2)/2) + 4 b^4.
 */
inline double unpolarized_moller_weight_closed_form(Speed speed, double chi1,
                                                    double chi2)
{
    using detail::sq;
    double const b2 = sq(speed.beta());
    return (1.0 - b2) * (1.0 + 3.0 * b2) * sq(std::sin((chi1 - chi2) / 2))
           + b2 * b2 * sq(std::cos((chi1 + chi2) / 2)) + 4.0 * b2 * b2;
}

/// C = 2 (1 + 2 b^2 + 6 b^4), the sum of F over the complete outcome set.
inline double unpolarized_moller_normalization(Speed speed)
{
    double const b2 = detail::sq(speed.beta());
    return 2.0 * (1.0 + 2.0 * b2 + 6.0 * b2 * b2);
}

/// Joint probability P[chi1, chi2]. Total on beta in [0, 1].
inline double joint(Scenario scenario, Speed speed, double chi1, double chi2)
{
    using detail::sq;
    switch (scenario)
    {
        case Scenario::MollerPolarizedTheta0: {
            auto const w = detail::moller_theta0_weights(speed);
            double const amp = w.singlet * std::sin((chi1 - chi2) / 2)
                               - w.triplet * std::cos((chi1 + chi2) / 2);
            return sq(amp) / (2.0 * w.norm2);
        }
        case Scenario::MollerPolarizedThetaPi2:
            return sq(std::sin((chi1 - chi2) / 2)) / 2.0;
        case Scenario::PhotonPolarized: {
            auto const w = detail::photon_weights(speed);
            return (sq(w.anti * std::sin(chi1 - chi2))
                    + sq(w.sym * std::cos(chi1 + chi2)))
                   / (2.0 * w.norm2);
        }
        case Scenario::MollerUnpolarized:
            return unpolarized_moller_weight_closed_form(speed, chi1, chi2)
                   / unpolarized_moller_normalization(speed);
        case Scenario::PhotonUnpolarized:
            return (1.0 - sq(detail::pair_amplitude(speed, chi1, chi2)))
                   / (2.0 * (1.0 + detail::pair_factor(speed) / 2.0));
        case Scenario::Spin0Annihilation:
            return sq(detail::pair_amplitude(speed, chi1, chi2))
                   / (2.0 * (1.0 - detail::pair_factor(speed) / 2.0));
    }
    throw DomainError("unknown scenario");
}

/// Single-detector probability P[chi, -] (first) or P[-, chi] (second).
inline double marginal(Scenario scenario, Speed speed, Detector which,
                       double chi)
{
    using detail::sq;
    switch (scenario)
    {
        case Scenario::MollerPolarizedTheta0: {
            auto const w = detail::moller_theta0_weights(speed);
            double const shift = w.triplet * w.singlet / w.norm2 * std::sin(chi);
            return which == Detector::first ? 0.5 - shift : 0.5 + shift;
        }
        case Scenario::MollerPolarizedThetaPi2:
        case Scenario::PhotonPolarized:
        case Scenario::MollerUnpolarized:
            return 0.5;
        case Scenario::PhotonUnpolarized: {
            double const f = detail::pair_factor(speed);
            return (1.0 + f * sq(std::cos(chi))) / (2.0 * (1.0 + f / 2.0));
        }
        case Scenario::Spin0Annihilation: {
            double const f = detail::pair_factor(speed);
            return (1.0 - f * sq(std::cos(chi))) / (2.0 * (1.0 - f / 2.0));
        }
    }
    throw DomainError("unknown scenario");
}

struct IdentityResiduals
{
    double marginal_first{0};   //!< |P[c1,c2] + P[c1,c2+D] - P[c1,-]|
    double marginal_second{0};  //!< |P[c1,c2] + P[c1+D,c2] - P[-,c2]|
    double completeness{0};     //!< |sum of the 4 complementary joints - 1|

    double max() const
    {
        return std::max({marginal_first, marginal_second, completeness});
    }
};

struct MarginalizationCheck
{
    IdentityResiduals residuals;
    bool passed{false};
};

inline constexpr double kIdentityTolerance = 1e-12;

/// Summing the joint over a complete pair of outcomes of one detector must
/// reproduce the other detector's single probability, and all four
/// complementary outcomes must sum to one.
inline MarginalizationCheck marginalization_check(Scenario scenario,
                                                  Speed speed, double chi1,
                                                  double chi2)
{
    double const d = traits(scenario).complement_shift;
    auto p = [&](double a, double b) { return joint(scenario, speed, a, b); };
    IdentityResiduals r;
    r.marginal_first = std::abs(p(chi1, chi2) + p(chi1, chi2 + d)
                                - marginal(scenario, speed, Detector::first, chi1));
    r.marginal_second = std::abs(p(chi1, chi2) + p(chi1 + d, chi2)
                                 - marginal(scenario, speed, Detector::second, chi2));
    r.completeness = std::abs(p(chi1, chi2) + p(chi1 + d, chi2)
                              + p(chi1, chi2 + d) + p(chi1 + d, chi2 + d) - 1.0);
    return {r, r.max() <= kIdentityTolerance};
}

} // namespace polcorr
