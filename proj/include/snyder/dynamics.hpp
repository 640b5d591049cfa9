#pragma once

// Planar Coulomb orbits under the Snyder brackets
//   {x_i, p_j} = delta_ij + beta^2 p_i p_j,  {x_i, x_j} = beta^2 J_ij,  {p_i, p_j} = 0,
// with the undeformed Hamiltonian H = p^2/2m - e^2/r.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "snyder/error.hpp"
#include "snyder/model.hpp"

namespace snyder {

struct OrbitState {
    double x1 = 0.0;
    double x2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double t = 0.0;

    double radius() const noexcept { return std::hypot(x1, x2); }
    double azimuth() const noexcept { return std::atan2(x2, x1); }
};

/// Phase-space vector in the order (x1, x2, p1, p2).
using PhaseVector = std::array<double, 4>;
/// Antisymmetric bracket table Pi^{ab} = {z_a, z_b} over the same ordering.
using PoissonTensor = std::array<std::array<double, 4>, 4>;

inline PhaseVector phase_vector(const OrbitState& s) noexcept { return {s.x1, s.x2, s.p1, s.p2}; }

inline OrbitState orbit_state(const PhaseVector& z, double t) noexcept { return {z[0], z[1], z[2], z[3], t}; }

inline constexpr double default_collision_floor = 1e-8;

inline PoissonTensor poisson_tensor(const PhaseVector& z, double beta) noexcept
{
    const double b2 = beta * beta;
    const double x[2] = {z[0], z[1]};
    const double p[2] = {z[2], z[3]};
    const double j12 = x[0] * p[1] - x[1] * p[0];
    PoissonTensor pi{};
    pi[0][1] = b2 * j12;
    pi[1][0] = -b2 * j12;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double xp = (i == j ? 1.0 : 0.0) + b2 * p[i] * p[j];
            pi[i][2 + j] = xp;
            pi[2 + j][i] = -xp;
        }
    }
    return pi;
}

/// {f, g} = grad f . Pi . grad g.
inline double poisson_bracket(const PhaseVector& grad_f, const PhaseVector& grad_g, const PoissonTensor& pi) noexcept
{
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            s += grad_f[a] * pi[a][b] * grad_g[b];
    return s;
}

inline PhaseVector hamiltonian_gradient(const PhaseVector& z, const PhysicalParams& p) noexcept
{
    const double r = std::hypot(z[0], z[1]);
    const double k = p.e2() / (r * r * r);
    return {k * z[0], k * z[1], z[2] / p.m(), z[3] / p.m()};
}

struct Invariants {
    double energy = 0.0;            // H = p^2/2m - e^2/r
    double angular_momentum = 0.0;  // J = x1 p2 - x2 p1
};

inline Invariants invariants(const OrbitState& s, const PhysicalParams& p)
{
    const double r = s.radius();
    if (!(r > 0.0))
        throw Error(ErrorCode::CollisionSingularity, "r = 0");
    const double p_sq = s.p1 * s.p1 + s.p2 * s.p2;
    return {p_sq / (2.0 * p.m()) - p.e2() / r, s.x1 * s.p2 - s.x2 * s.p1};
}

/// Time derivatives (dx1, dx2, dp1, dp2):
///   dx_i/dt = p_i (1 + beta^2 p^2)/m + beta^2 e^2 J_ij x_j / r^3
///   dp_i/dt = -e^2 (x_i + beta^2 p_i (p.x)) / r^3
inline PhaseVector equations_of_motion(const PhaseVector& z, const PhysicalParams& p,
                                       double r_min = default_collision_floor)
{
    const double x1 = z[0], x2 = z[1], p1 = z[2], p2 = z[3];
    const double r = std::hypot(x1, x2);
    if (!(r > r_min))
        throw Error(ErrorCode::CollisionSingularity, "r=" + std::to_string(r) + " below collision floor");
    const double b2 = p.beta() * p.beta();
    const double e2 = p.e2();
    const double inv_r3 = 1.0 / (r * r * r);
    const double p_sq = p1 * p1 + p2 * p2;
    const double p_dot_x = p1 * x1 + p2 * x2;
    const double j12 = x1 * p2 - x2 * p1;
    const double kin = (1.0 + b2 * p_sq) / p.m();
    return {
        p1 * kin + b2 * e2 * j12 * x2 * inv_r3,
        p2 * kin - b2 * e2 * j12 * x1 * inv_r3,
        -e2 * (x1 + b2 * p1 * p_dot_x) * inv_r3,
        -e2 * (x2 + b2 * p2 * p_dot_x) * inv_r3,
    };
}

inline PhaseVector equations_of_motion(const OrbitState& s, const PhysicalParams& p,
                                       double r_min = default_collision_floor)
{
    return equations_of_motion(phase_vector(s), p, r_min);
}

/// A perihelion located between two accepted steps.
struct Perihelion {
    OrbitState state;
    double azimuth = 0.0;
};

struct Trajectory {
    std::vector<OrbitState> samples;  // every accepted step, strictly increasing t
    std::vector<Perihelion> perihelia;
    double h_drift = 0.0;  // max |H - H0| / |H0|
    double j_drift = 0.0;  // max |J - J0| / |J0| (absolute when J0 = 0)
    std::size_t rejected_steps = 0;
};

struct OrbitOptions {
    double r_min = default_collision_floor;
    /// Locate perihelia during integration.
    bool detect_perihelia = true;
};

namespace detail {

using rk78 = boost::numeric::odeint::runge_kutta_fehlberg78<PhaseVector>;
using error_checker = boost::numeric::odeint::default_error_checker<double, boost::numeric::odeint::array_algebra,
                                                                    boost::numeric::odeint::default_operations>;
using controlled_rk78 = boost::numeric::odeint::controlled_runge_kutta<rk78, error_checker>;

/// r dr/dt up to the positive factor 1/r: x . dx/dt.
inline double radial_rate(const PhaseVector& z, const PhaseVector& dz) noexcept { return z[0] * dz[0] + z[1] * dz[1]; }

inline double relative_drift(double value, double reference) noexcept
{
    const double scale = std::abs(reference);
    return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

} // namespace detail

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration of the deformed flow from
/// state0 to state0.t + t_end. Every accepted step is sampled; energy and
/// angular-momentum drift are tracked as diagnostics since the scheme is not
/// structure preserving.
inline Trajectory integrate_orbit(const OrbitState& state0, const PhysicalParams& p, double t_end, double local_tol,
                                  const OrbitOptions& opt = {})
{
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw Error(ErrorCode::InvalidArgument, "t_end must be finite and > 0");
    if (!(local_tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "local_tol must be > 0");
    if (!(state0.radius() > opt.r_min))
        throw Error(ErrorCode::CollisionSingularity, "initial state inside collision floor");

    auto system = [&p, r_min = opt.r_min](const PhaseVector& z, PhaseVector& dz, double /*t*/) {
        dz = equations_of_motion(z, p, r_min);
    };

    detail::controlled_rk78 stepper(detail::error_checker(local_tol, local_tol, 1.0, 1.0));
    detail::rk78 single;

    const Invariants inv0 = invariants(state0, p);
    Trajectory traj;
    traj.samples.push_back(state0);

    PhaseVector z = phase_vector(state0);
    double t = state0.t;
    const double t_stop = state0.t + t_end;
    const double r0 = state0.radius();
    // Initial step from the local dynamical time scale.
    double dt = std::min(t_end, 1e-3 * r0 * std::sqrt(p.m() * r0 / p.e2()));

    PhaseVector dz{};
    system(z, dz, t);
    double rate = detail::radial_rate(z, dz);

    while (t < t_stop) {
        if (t + dt > t_stop)
            dt = t_stop - t;
        const PhaseVector z_prev = z;
        const double t_prev = t;
        boost::numeric::odeint::controlled_step_result result;
        try {
            result = stepper.try_step(system, z, t, dt);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CollisionSingularity)
                throw;
            throw Error(ErrorCode::CollisionSingularity,
                        "r fell below " + std::to_string(opt.r_min) + " after t=" + std::to_string(t_prev));
        }
        if (result == boost::numeric::odeint::fail) {
            ++traj.rejected_steps;
            if (dt < 1e-14 * std::max(1.0, std::abs(t)))
                throw Error(ErrorCode::StepUnderflow, "step size underflow at t=" + std::to_string(t));
            continue;
        }

        system(z, dz, t);
        const double new_rate = detail::radial_rate(z, dz);
        const double noise = 1e-12 * std::hypot(z[0], z[1]) * std::hypot(dz[0], dz[1]);

        if (opt.detect_perihelia && rate < -noise && new_rate > noise) {
            // Refine with single steps from the left state; each trial point is
            // as accurate as an accepted step.
            const double h_full = t - t_prev;
            auto g = [&](double h) {
                if (h <= 0.0)
                    return rate;
                PhaseVector out;
                single.do_step(system, z_prev, t_prev, out, h);
                PhaseVector dout;
                system(out, dout, t_prev + h);
                return detail::radial_rate(out, dout);
            };
            std::uintmax_t iters = 100;
            auto tol = [h_full](double a, double b) { return std::abs(b - a) <= 1e-15 * h_full; };
            const auto [ha, hb] = boost::math::tools::toms748_solve(g, 0.0, h_full, rate, new_rate, tol, iters);
            const double h_event = 0.5 * (ha + hb);
            PhaseVector z_event;
            single.do_step(system, z_prev, t_prev, z_event, h_event);
            const OrbitState ev = orbit_state(z_event, t_prev + h_event);
            if (ev.t > traj.samples.back().t && ev.t < t)
                traj.samples.push_back(ev);
            traj.perihelia.push_back({ev, ev.azimuth()});
        }
        rate = new_rate;

        const OrbitState s = orbit_state(z, t);
        const Invariants inv = invariants(s, p);
        traj.h_drift = std::max(traj.h_drift, detail::relative_drift(inv.energy, inv0.energy));
        traj.j_drift = std::max(traj.j_drift, detail::relative_drift(inv.angular_momentum, inv0.angular_momentum));
        traj.samples.push_back(s);
    }
    return traj;
}

struct Precession {
    /// Mean azimuthal advance per radial period minus 2 pi, signed along the
    /// sense of rotation. Zero when circular.
    double per_orbit = 0.0;
    int orbits = 0;
    /// No radial oscillation; precession undefined and reported as 0.
    bool circular = false;
};

/// Mean perihelion advance per radial period from the located perihelia.
inline Precession precession_per_orbit(const Trajectory& traj)
{
    if (traj.samples.size() < 2)
        throw Error(ErrorCode::InsufficientPeriods, "trajectory has fewer than two samples");
    double r_lo = INFINITY, r_hi = 0.0;
    for (const auto& s : traj.samples) {
        r_lo = std::min(r_lo, s.radius());
        r_hi = std::max(r_hi, s.radius());
    }
    if ((r_hi - r_lo) <= 1e-9 * r_hi)
        return {0.0, 0, true};

    if (traj.perihelia.size() < 3)
        throw Error(ErrorCode::InsufficientPeriods,
                    "need at least 3 perihelia, found " + std::to_string(traj.perihelia.size()));
    const auto& first = traj.perihelia.front().state;
    const double sense = (first.x1 * first.p2 - first.x2 * first.p1) >= 0.0 ? 1.0 : -1.0;
    double sum = 0.0;
    for (std::size_t k = 1; k < traj.perihelia.size(); ++k) {
        const double d = traj.perihelia[k].azimuth - traj.perihelia[k - 1].azimuth;
        sum += std::remainder(d, 2.0 * std::numbers::pi);
    }
    const int orbits = static_cast<int>(traj.perihelia.size() - 1);
    return {sense * sum / orbits, orbits, false};
}

/// Radial period of the undeformed Kepler orbit through s: 2 pi sqrt(m a^3 / e^2),
/// a = e^2 / (2|H|). Requires a bound state.
inline double kepler_radial_period(const OrbitState& s, const PhysicalParams& p)
{
    const double h = invariants(s, p).energy;
    if (!(h < 0.0))
        throw Error(ErrorCode::InvalidArgument, "orbit is not bound (H >= 0)");
    const double a = p.e2() / (2.0 * -h);
    return 2.0 * std::numbers::pi * std::sqrt(p.m() * a * a * a / p.e2());
}

} // namespace snyder
