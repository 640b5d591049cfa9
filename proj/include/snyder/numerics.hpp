#pragma once

// Numerical route to the phase integrals (quadrature of the raw integrands),
// Bohr-Sommerfeld root solving, spectrum tables and scaling fits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "snyder/analytic.hpp"
#include "snyder/error.hpp"
#include "snyder/model.hpp"
#include "snyder/quadrature.hpp"

namespace snyder {

enum class SolveMethod { closed_form, numeric };

struct SolverOptions {
    QuadratureSpec quad{};
    /// Relative width at which the energy bracket is considered converged.
    double root_rel_tol = 1e-12;
};

/// Phase integral by quadrature of the raw integrand.
///   l = 0: int_R 2 m e^2 / ((p^2 + 2mE)(1 + beta^2 p^2)) dp
///   l > 0: l int_{z-}^{z+} sqrt((z - z-)(z+ - z)) / (z (z + 2mE)(1 + beta^2 z)) dz
inline PhaseIntegralResult phase_integral_numeric(const PhysicalParams& p, double E, double l,
                                                  const QuadratureSpec& spec = {})
{
    detail::require_positive_energy(E);
    if (!(l >= 0.0) || !std::isfinite(l))
        throw Error(ErrorCode::InvalidArgument, "l must be finite and >= 0");
    detail::require_in_window(p, E, l);

    const double m = p.m();
    const double e2 = p.e2();
    const double b2 = p.beta() * p.beta();
    const double c = 2.0 * m * E;

    if (l == 0.0) {
        auto integrand = [=](double mom) {
            const double q = mom * mom;
            return 2.0 * m * e2 / ((q + c) * (1.0 + b2 * q));
        };
        const auto r = integrate_real_line(integrand, spec, std::sqrt(c));
        return {r.value, IntegralKind::numeric, r.err_estimate};
    }

    const TurningPoints tp = turning_points(p, E, l);
    if (tp.degenerate || !(tp.z_minus < tp.z_plus))
        return {0.0, IntegralKind::numeric, 0.0};
    const double zm = tp.z_minus;
    const double zp = tp.z_plus;
    auto integrand = [=](double z) {
        const double band = std::max(0.0, (z - zm) * (zp - z));
        return l * std::sqrt(band) / (z * (z + c) * (1.0 + b2 * z));
    };
    const auto r = integrate_band(integrand, zm, zp, spec);
    return {r.value, IntegralKind::numeric, r.err_estimate};
}

inline PhaseIntegralResult phase_integral(const PhysicalParams& p, double E, int l, SolveMethod method,
                                          const QuadratureSpec& spec = {})
{
    if (method == SolveMethod::closed_form)
        return phase_integral_closed(p, E, l);
    return phase_integral_numeric(p, E, static_cast<double>(l), spec);
}

/// Binding energy E* with Phi(E*) = 2 pi n for the radial degree of freedom.
/// Phi is decreasing on the window, so a bracket around the undeformed level
/// is widened geometrically and then refined by TOMS 748.
inline double solve_bs_energy(const PhysicalParams& p, const QuantumNumbers& qn, SolveMethod method,
                              const SolverOptions& opt = {})
{
    if (!(opt.root_rel_tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "root tolerance must be > 0");
    const int l = qn.l();
    const double target = 2.0 * std::numbers::pi * qn.n();
    const EnergyWindow window = energy_window(p, l);
    const double e0 = newtonian_energy(p, qn.n_prime());

    auto residual = [&](double E) { return phase_integral(p, E, l, method, opt.quad).value - target; };

    const double cap = std::isfinite(window.e_max) ? window.e_max * (1.0 - 1e-9) : INFINITY;
    double hi = std::min(4.0 * e0, cap);
    double lo = std::min(0.25 * e0, 0.5 * hi);

    double f_lo = residual(lo);
    for (int i = 0; f_lo < 0.0; ++i) {
        if (i == 200)
            throw Error(ErrorCode::NoRootInWindow, "phase integral stays below 2 pi n near E -> 0");
        hi = lo;
        lo *= 0.25;
        f_lo = residual(lo);
    }
    double f_hi = residual(hi);
    while (f_hi > 0.0) {
        if (hi >= cap)
            throw Error(ErrorCode::NoRootInWindow,
                        "phase integral exceeds 2 pi n across the window for n=" + std::to_string(qn.n()) +
                            " l=" + std::to_string(l));
        lo = hi;
        f_lo = f_hi;
        hi = std::min(4.0 * hi, cap);
        f_hi = residual(hi);
    }
    if (f_lo == 0.0)
        return lo;
    if (f_hi == 0.0)
        return hi;

    const double rel = opt.root_rel_tol;
    auto converged = [rel](double a, double b) { return std::abs(b - a) <= rel * std::min(std::abs(a), std::abs(b)); };
    std::uintmax_t max_iter = 300;
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi, converged, max_iter);
    return 0.5 * (a + b);
}

struct SpectrumEntry {
    QuantumNumbers qn = QuantumNumbers::from_radial(1, 0);
    double e_closed = NAN;
    double e_numeric = NAN;
    double e_series = NAN;
    double e_newton = NAN;
    /// Operator-level perturbative comparator; NaN for l = 0 where it diverges.
    double e_perturbative_ref = NAN;
    /// First solver failure for this entry, empty on success.
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

/// All levels 1 <= n' <= n_prime_max, 0 <= l < n', ordered by (n', l).
/// Solver failures are recorded per entry.
inline std::vector<SpectrumEntry> spectrum_table(const PhysicalParams& p, int n_prime_max, const SolverOptions& opt = {})
{
    if (n_prime_max < 1)
        throw Error(ErrorCode::InvalidArgument, "n_prime_max must be >= 1");
    std::vector<SpectrumEntry> rows;
    for (int np = 1; np <= n_prime_max; ++np) {
        for (int l = 0; l < np; ++l) {
            SpectrumEntry row;
            row.qn = QuantumNumbers::from_principal(np, l);
            row.e_newton = newtonian_energy(p, np);
            row.e_series = energy_series(p, row.qn);
            if (l > 0)
                row.e_perturbative_ref = energy_3d_perturbative_ref(p, row.qn);
            try {
                row.e_closed = solve_bs_energy(p, row.qn, SolveMethod::closed_form, opt);
                row.e_numeric = solve_bs_energy(p, row.qn, SolveMethod::numeric, opt);
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // log-space
    double residual_rms = 0.0;
    int points_used = 0;
};

/// Least-squares line through (log x, log |y|). Points with |y| below
/// noise_floor are dropped; fewer than two survivors is DegenerateFit.
inline LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y, double noise_floor = 0.0)
{
    if (x.size() != y.size())
        throw Error(ErrorCode::InvalidArgument, "fit needs equally sized x and y");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ay = std::abs(y[i]);
        if (x[i] > 0.0 && ay > noise_floor && ay > 0.0 && std::isfinite(ay))
            pts.emplace_back(std::log(x[i]), std::log(ay));
    }
    if (pts.size() < 2)
        throw Error(ErrorCode::DegenerateFit, "fewer than two usable points above the noise floor");
    const double k = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto [lx, ly] : pts) {
        sx += lx;
        sy += ly;
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (auto [lx, ly] : pts) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
    }
    if (!(sxx > 0.0))
        throw Error(ErrorCode::DegenerateFit, "x values do not span a range");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (auto [lx, ly] : pts) {
        const double r = ly - (fit.intercept + fit.slope * lx);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / k);
    fit.points_used = static_cast<int>(pts.size());
    return fit;
}

namespace detail {

inline void require_beta_grid(std::span<const double> beta_grid)
{
    if (beta_grid.size() < 4)
        throw Error(ErrorCode::InvalidArgument, "beta grid needs at least 4 points");
    for (double b : beta_grid)
        if (!(b > 0.0) || !std::isfinite(b))
            throw Error(ErrorCode::InvalidArgument, "beta grid values must be finite and > 0");
    const auto [lo, hi] = std::minmax_element(beta_grid.begin(), beta_grid.end());
    if (std::log10(*hi / *lo) < 1.5 - 1e-12)
        throw Error(ErrorCode::InvalidArgument, "beta grid must span at least 1.5 decades");
}

} // namespace detail

/// Relative corrections E(beta)/E(0) - 1 of the solved level, one per grid point.
/// E(0) is the exact undeformed level.
inline std::vector<double> relative_corrections(const PhysicalParams& base, const QuantumNumbers& qn,
                                                std::span<const double> beta_grid,
                                                SolveMethod method = SolveMethod::closed_form,
                                                const SolverOptions& opt = {})
{
    const double e0 = newtonian_energy(base, qn.n_prime());
    std::vector<double> out;
    out.reserve(beta_grid.size());
    for (double b : beta_grid)
        out.push_back(solve_bs_energy(base.with_beta(b), qn, method, opt) / e0 - 1.0);
    return out;
}

/// Order of the leading correction: slope of log|E(beta)/E(0) - 1| against
/// log beta. Points below 1e-13 are treated as round-off and dropped.
inline LogLogFit correction_order(const PhysicalParams& base, const QuantumNumbers& qn, std::span<const double> beta_grid,
                                  SolveMethod method = SolveMethod::closed_form, const SolverOptions& opt = {})
{
    detail::require_beta_grid(beta_grid);
    const auto corr = relative_corrections(base, qn, beta_grid, method, opt);
    const LogLogFit fit = fit_loglog(beta_grid, corr, 1e-13);
    if (fit.points_used < 3)
        throw Error(ErrorCode::DegenerateFit, "corrections underflow at most grid points");
    return fit;
}

/// Least-squares c in E(beta)/E(0) - 1 = c beta^order over the grid.
inline double correction_coefficient(const PhysicalParams& base, const QuantumNumbers& qn,
                                     std::span<const double> beta_grid, int order,
                                     SolveMethod method = SolveMethod::closed_form, const SolverOptions& opt = {})
{
    if (beta_grid.empty() || order < 1)
        throw Error(ErrorCode::InvalidArgument, "need a non-empty grid and order >= 1");
    const auto corr = relative_corrections(base, qn, beta_grid, method, opt);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        const double x = std::pow(beta_grid[i], order);
        num += x * corr[i];
        den += x * x;
    }
    return num / den;
}

/// Leading coefficient predicted by the series: -2 m e^2 / n for l = 0 (order 1),
/// (2 m^2 e^4 / n')(1/n' - 1/l) for l >= 1 (order 2).
inline double series_coefficient(const PhysicalParams& p, const QuantumNumbers& qn)
{
    const double me2 = p.m() * p.e2();
    if (qn.l() == 0)
        return -2.0 * me2 / qn.n();
    const double np = qn.n_prime();
    return (2.0 * me2 * me2 / np) * (1.0 / np - 1.0 / qn.l());
}

struct LLimitRow {
    double l = 0.0;
    double phi_3d = NAN;          // radial_phase_integral_closed(E, l)
    double phi_3d_shifted = NAN;  // phi_3d + 2 pi l, the undeformed l offset removed
    double phi_1d = NAN;
    double gap = NAN;             // phi_3d_shifted - phi_1d
    double rel_gap = NAN;         // gap / phi_1d
    std::string error;
};

struct LLimitStudy {
    std::vector<LLimitRow> rows;
    double phi_1d = NAN;
    /// Closed-form l -> 0+ limit of the 3D integral.
    double phi_3d_limit = NAN;
};

/// Compares the 3D radial integral at small l against the 1D channel.
inline LLimitStudy l_limit_study(const PhysicalParams& p, double E, std::span<const double> l_grid)
{
    LLimitStudy study;
    study.phi_1d = phase_integral_1d_closed(p, E).value;
    study.phi_3d_limit = radial_phase_integral_zero_l_limit(p, E).value;
    for (double l : l_grid) {
        LLimitRow row;
        row.l = l;
        row.phi_1d = study.phi_1d;
        try {
            row.phi_3d = radial_phase_integral_closed(p, E, l).value;
            row.phi_3d_shifted = row.phi_3d + 2.0 * std::numbers::pi * l;
            row.gap = row.phi_3d_shifted - row.phi_1d;
            row.rel_gap = row.gap / row.phi_1d;
        } catch (const Error& e) {
            row.error = e.what();
        }
        study.rows.push_back(std::move(row));
    }
    return study;
}

/// Log-log slope of |gap(l)| against beta at fixed E and l.
inline LogLogFit l_limit_gap_scaling(const PhysicalParams& base, double E, double l, std::span<const double> beta_grid)
{
    std::vector<double> gaps;
    const double ls[] = {l};
    for (double b : beta_grid) {
        const auto study = l_limit_study(base.with_beta(b), E, ls);
        if (!study.rows.front().error.empty())
            throw Error(ErrorCode::OutOfWindow, study.rows.front().error);
        gaps.push_back(study.rows.front().gap);
    }
    return fit_loglog(beta_grid, gaps);
}

} // namespace snyder
