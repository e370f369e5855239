#pragma once

#include <stdexcept>

namespace polcorr
{

/// Raised when an argument lies outside the domain of an operation
/// (speed outside [0,1], bad gamma index, empty grid, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Raised when a propagator denominator vanishes, e.g. Møller scattering at
/// zero speed where every momentum coincides.
class DegenerateKinematics : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace polcorr
