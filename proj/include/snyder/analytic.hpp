#pragma once

// Closed-form phase integrals, turning points and spectra of the Coulomb
// problem under the Snyder symplectic weight 1/(1 + beta^2 p^2).
//
// The phase integral Phi(E) is the full loop value of the radial action; the
// Bohr-Sommerfeld condition is Phi(E) = 2 pi n with no Maslov shift.

#include <cmath>
#include <numbers>
#include <string>

#include "snyder/error.hpp"
#include "snyder/model.hpp"

namespace snyder {

enum class IntegralKind { closed_form, numeric };

struct PhaseIntegralResult {
    double value = 0.0;
    IntegralKind kind = IntegralKind::closed_form;
    double err_estimate = 0.0;  // absolute; zero for closed forms
};

/// Radial-momentum band [z_minus, z_plus] in z = p_rho^2.
struct TurningPoints {
    double z_minus = 0.0;
    double z_plus = 0.0;
    bool degenerate = false;
};

namespace detail {

inline void require_positive_energy(double E)
{
    if (!(E > 0.0) || !std::isfinite(E))
        throw Error(ErrorCode::OutOfWindow, "binding energy must be finite and > 0, got " + std::to_string(E));
}

inline void require_in_window(const PhysicalParams& p, double E, double l)
{
    require_positive_energy(E);
    const EnergyWindow w = energy_window(p, l);
    if (!w.contains(E))
        throw Error(ErrorCode::OutOfWindow,
                    "E=" + std::to_string(E) + " outside (0, " + std::to_string(w.e_max) + ") for l=" + std::to_string(l));
}

inline void require_positive_l(double l)
{
    if (!(l > 0.0) || !std::isfinite(l))
        throw Error(ErrorCode::RequiresNonzeroL, "formula needs l > 0");
}

} // namespace detail

/// Real roots of the radial band for angular momentum l > 0. Independent of
/// beta: the Hamiltonian is undeformed.
inline TurningPoints turning_points(const PhysicalParams& p, double E, double l)
{
    detail::require_positive_energy(E);
    detail::require_positive_l(l);
    const double m = p.m();
    const double e2 = p.e2();
    const double a = m * e2 * e2 / (l * l);  // m e^4 / l^2
    double disc = m * a - 2.0 * m * E;       // m^2 e^4 / l^2 - 2 m E
    if (disc < 0.0) {
        // Tolerate round-off exactly at the circular edge.
        if (disc < -1e-14 * m * a)
            throw Error(ErrorCode::OutOfWindow,
                        "no real turning points: E=" + std::to_string(E) + " above m e^4/(2 l^2)");
        disc = 0.0;
    }
    const double root = (e2 / l) * std::sqrt(disc);
    TurningPoints tp;
    tp.z_plus = 2.0 * m * (a - E + root);
    // z_- from the product identity z_- z_+ = (2mE)^2; avoids cancellation.
    const double c = 2.0 * m * E;
    tp.z_minus = c * c / tp.z_plus;
    tp.degenerate = (disc == 0.0);
    if (tp.degenerate)
        tp.z_minus = tp.z_plus;
    return tp;
}

/// 1D loop integral -oint x dp/(1 + beta^2 p^2) over p in (-inf, inf):
/// pi sqrt(2 m e^4 / E) / (1 + beta sqrt(2 m E)).
inline PhaseIntegralResult phase_integral_1d_closed(const PhysicalParams& p, double E)
{
    detail::require_in_window(p, E, 0.0);
    const double u = std::sqrt(2.0 * p.m() * E);
    const double value = std::numbers::pi * std::sqrt(2.0 * p.m() * p.e2() * p.e2() / E) / (1.0 + p.beta() * u);
    return {value, IntegralKind::closed_form, 0.0};
}

/// Radial loop integral for l > 0,
///
///   pi [ sqrt(2 m e^4 / E) / d - l - sqrt(l^2 + (2 beta m e^2 / d)^2) ],
///   d = 1 - 2 beta^2 m E.
///
/// Obtained by partial fractions of
///   l * int_{z-}^{z+} sqrt((z - z-)(z+ - z)) / (z (z + 2mE)(1 + beta^2 z)) dz.
/// Note d enters the inner root squared. At beta = 0 this is
/// pi (sqrt(2 m e^4 / E) - 2 l) through the same arithmetic.
inline PhaseIntegralResult radial_phase_integral_closed(const PhysicalParams& p, double E, double l)
{
    detail::require_positive_l(l);
    detail::require_in_window(p, E, l);
    const double m = p.m();
    const double e2 = p.e2();
    const double beta = p.beta();
    const double d = 1.0 - 2.0 * beta * beta * m * E;
    const double inner = 2.0 * beta * m * e2 / d;
    const double value =
        std::numbers::pi * (std::sqrt(2.0 * m * e2 * e2 / E) / d - l - std::hypot(l, inner));
    return {value, IntegralKind::closed_form, 0.0};
}

/// lim_{l -> 0+} of radial_phase_integral_closed:
/// pi (sqrt(2 m e^4 / E) - 2 beta m e^2) / (1 - 2 beta^2 m E).
/// Algebraically identical to phase_integral_1d_closed, since
/// 1 - 2 beta^2 m E = (1 - beta u)(1 + beta u) with u = sqrt(2 m E).
inline PhaseIntegralResult radial_phase_integral_zero_l_limit(const PhysicalParams& p, double E)
{
    detail::require_in_window(p, E, 0.0);
    const double m = p.m();
    const double e2 = p.e2();
    const double beta = p.beta();
    const double d = 1.0 - 2.0 * beta * beta * m * E;
    const double value = std::numbers::pi * (std::sqrt(2.0 * m * e2 * e2 / E) - 2.0 * beta * m * e2) / d;
    return {value, IntegralKind::closed_form, 0.0};
}

/// Exact 1D level: positive root u = sqrt(2mE) of beta n u^2 + n u - m e^2 = 0.
inline double energy_1d_closed(const PhysicalParams& p, int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidQuantumNumbers, "n must be >= 1");
    const double nn = n;
    const double me2 = p.m() * p.e2();
    // Rationalized root, stable as beta -> 0.
    const double u = 2.0 * me2 / (nn + std::sqrt(nn * nn + 4.0 * p.beta() * nn * me2));
    return u * u / (2.0 * p.m());
}

/// First-order expansion (m e^4 / 2n^2)(1 - 2 beta m e^2 / n). Meaningful
/// only while beta m e^2 / n is small.
inline double energy_1d_series(const PhysicalParams& p, int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidQuantumNumbers, "n must be >= 1");
    const double nn = n;
    const double e0 = p.m() * p.e2() * p.e2() / (2.0 * nn * nn);
    return e0 * (1.0 - 2.0 * dimensionless_deformation(p) / nn);
}

/// Second-order expansion for l >= 1:
/// (m e^4 / 2n'^2) [1 + (2 beta^2 m^2 e^4 / n')(1/n' - 1/l)].
inline double energy_3d_series(const PhysicalParams& p, const QuantumNumbers& qn)
{
    if (qn.l() == 0)
        throw Error(ErrorCode::RequiresNonzeroL, "3D series is singular at l = 0; use energy_1d_series");
    const double np = qn.n_prime();
    const double l = qn.l();
    const double eps = dimensionless_deformation(p);
    const double e0 = newtonian_energy(p, qn.n_prime());
    return e0 * (1.0 + (2.0 * eps * eps / np) * (1.0 / np - 1.0 / l));
}

/// Perturbative comparator from operator-level perturbation theory:
/// (m e^4 / 2n'^2) [1 + (2 beta^2 m^2 e^4 / n')(1/n' - 1/(l+1/2) + 1/(2l(l+1/2)(l+1)))].
inline double energy_3d_perturbative_ref(const PhysicalParams& p, const QuantumNumbers& qn)
{
    if (qn.l() == 0)
        throw Error(ErrorCode::RequiresNonzeroL, "perturbative formula diverges at l = 0");
    const double np = qn.n_prime();
    const double l = qn.l();
    const double eps = dimensionless_deformation(p);
    const double e0 = newtonian_energy(p, qn.n_prime());
    const double bracket = 1.0 / np - 1.0 / (l + 0.5) + 1.0 / (2.0 * l * (l + 0.5) * (l + 1.0));
    return e0 * (1.0 + (2.0 * eps * eps / np) * bracket);
}

/// Series prediction for either channel: 1D expansion at l = 0, 3D otherwise.
inline double energy_series(const PhysicalParams& p, const QuantumNumbers& qn)
{
    if (qn.l() == 0)
        return energy_1d_series(p, qn.n());
    return energy_3d_series(p, qn);
}

/// Closed-form Phi for the channel of angular momentum l (1D when l = 0).
inline PhaseIntegralResult phase_integral_closed(const PhysicalParams& p, double E, int l)
{
    if (l < 0)
        throw Error(ErrorCode::InvalidArgument, "l must be >= 0");
    if (l == 0)
        return phase_integral_1d_closed(p, E);
    return radial_phase_integral_closed(p, E, static_cast<double>(l));
}

} // namespace snyder
