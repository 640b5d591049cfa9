#pragma once

// Physical parameters, quantum numbers and energy windows of the Coulomb
// problem with Snyder-deformed brackets. Units: hbar = 1. Energies are
// binding energies E > 0 (total energy -E).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snyder/error.hpp"

namespace snyder {

/// Mass m, Coulomb coupling e^2 and deformation beta (inverse momentum).
/// Only constructible through validate_params, so a live instance always
/// satisfies m > 0, e2 > 0, beta >= 0, all finite.
class PhysicalParams {
public:
    double m() const noexcept { return m_; }
    double e2() const noexcept { return e2_; }
    double beta() const noexcept { return beta_; }

    /// Same m and e^2 with a different deformation.
    PhysicalParams with_beta(double beta) const;

    friend PhysicalParams validate_params(double m, double e2, double beta);

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;

private:
    PhysicalParams(double m, double e2, double beta) : m_(m), e2_(e2), beta_(beta) {}

    double m_;
    double e2_;
    double beta_;
};

inline PhysicalParams validate_params(double m, double e2, double beta)
{
    if (!std::isfinite(m))
        throw Error(ErrorCode::NonFinite, "m is not finite");
    if (!std::isfinite(e2))
        throw Error(ErrorCode::NonFinite, "e2 is not finite");
    if (!std::isfinite(beta))
        throw Error(ErrorCode::NonFinite, "beta is not finite");
    if (!(m > 0.0))
        throw Error(ErrorCode::NonPositiveMass, "m must be > 0, got " + std::to_string(m));
    if (!(e2 > 0.0))
        throw Error(ErrorCode::NonPositiveCoupling, "e2 must be > 0, got " + std::to_string(e2));
    if (beta < 0.0)
        throw Error(ErrorCode::NegativeBeta, "beta must be >= 0, got " + std::to_string(beta));
    return PhysicalParams(m, e2, beta);
}

inline PhysicalParams PhysicalParams::with_beta(double beta) const
{
    return validate_params(m_, e2_, beta);
}

/// Default atomic-style units m = e^2 = 1.
inline PhysicalParams unit_params(double beta = 0.0)
{
    return validate_params(1.0, 1.0, beta);
}

/// Radial number n >= 1, angular momentum l >= 0, principal n' = n + l.
class QuantumNumbers {
public:
    static QuantumNumbers from_radial(int n, int l)
    {
        if (n < 1)
            throw Error(ErrorCode::InvalidQuantumNumbers, "radial n must be >= 1, got " + std::to_string(n));
        if (l < 0)
            throw Error(ErrorCode::InvalidQuantumNumbers, "l must be >= 0, got " + std::to_string(l));
        return QuantumNumbers(n, l);
    }

    static QuantumNumbers from_principal(int n_prime, int l)
    {
        if (l < 0 || n_prime < l + 1)
            throw Error(ErrorCode::InvalidQuantumNumbers,
                        "need 0 <= l < n', got n'=" + std::to_string(n_prime) + " l=" + std::to_string(l));
        return QuantumNumbers(n_prime - l, l);
    }

    int n() const noexcept { return n_; }
    int l() const noexcept { return l_; }
    int n_prime() const noexcept { return n_ + l_; }

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

private:
    QuantumNumbers(int n, int l) : n_(n), l_(l) {}

    int n_;
    int l_;
};

/// Binding energies E with 0 < E < e_max (or E <= e_max when the upper edge
/// is the circular-orbit bound, see includes_edge).
struct EnergyWindow {
    double e_min = 0.0;  // exclusive
    double e_max = std::numeric_limits<double>::infinity();
    /// True when e_max is the circular-orbit edge me^4/(2l^2), where the
    /// turning points merge but every formula stays finite.
    bool includes_edge = false;

    bool contains(double E) const noexcept
    {
        return E > e_min && (E < e_max || (includes_edge && E == e_max));
    }

    bool contains_strictly(double E) const noexcept { return E > e_min && E < e_max; }
};

/// epsilon = beta * m * e^2, the natural small parameter of the spectrum.
inline double dimensionless_deformation(const PhysicalParams& p) noexcept
{
    return p.beta() * p.m() * p.e2();
}

/// Circular-orbit edge me^4/(2l^2) for l >= 1.
inline double circular_orbit_energy(const PhysicalParams& p, double l) noexcept
{
    return p.m() * p.e2() * p.e2() / (2.0 * l * l);
}

/// Pole of the deformed radial weight: 1 - 2 beta^2 m E = 0.
inline double deformation_pole_energy(const PhysicalParams& p) noexcept
{
    if (p.beta() == 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * p.beta() * p.beta() * p.m());
}

/// Window for real (non-integer) l as well, so that l -> 0 studies can share it.
inline EnergyWindow energy_window(const PhysicalParams& p, double l)
{
    if (!(l >= 0.0) || !std::isfinite(l))
        throw Error(ErrorCode::InvalidArgument, "l must be finite and >= 0");
    EnergyWindow w;
    const double pole = deformation_pole_energy(p);
    if (l == 0.0) {
        w.e_max = pole;
        return w;
    }
    const double circ = circular_orbit_energy(p, l);
    if (circ < pole) {
        w.e_max = circ;
        w.includes_edge = true;
    } else {
        w.e_max = pole;
    }
    return w;
}

inline EnergyWindow energy_window(const PhysicalParams& p, int l)
{
    if (l < 0)
        throw Error(ErrorCode::InvalidArgument, "l must be >= 0");
    return energy_window(p, static_cast<double>(l));
}

/// Undeformed level me^4/(2 n'^2).
inline double newtonian_energy(const PhysicalParams& p, int n_prime) noexcept
{
    const double np = n_prime;
    return p.m() * p.e2() * p.e2() / (2.0 * np * np);
}

} // namespace snyder
