#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with the two variable
// changes the phase integrals need:
//   * band integrals with square-root zeros at both ends,
//     z = a + (b - a) sin^2(phi), phi in [0, pi/2];
//   * real-line integrals with algebraic decay, p = s tan(theta).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "snyder/error.hpp"

namespace snyder {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 60;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be > 0");
        if (max_subdivisions < 1)
            throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

/// One Kronrod-15 panel; error is |K15 - G7| floored at a few ulps of the panel sum.
template <class F>
Panel gauss_kronrod_panel(const F& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(center);
    double k15 = f0 * wk[0];
    double g7 = f0 * wg[0];
    double l1 = std::abs(k15);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fp = f(center + half * x[i]);
        const double fm = f(center - half * x[i]);
        k15 += (fp + fm) * wk[i];
        l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
        // Even indices are the embedded Gauss nodes.
        if (i % 2 == 0)
            g7 += (fp + fm) * wg[i / 2];
    }
    k15 *= half;
    g7 *= half;
    l1 *= std::abs(half);
    const double err = std::max(std::abs(k15 - g7), 4.0 * std::numeric_limits<double>::epsilon() * l1);
    return {a, b, k15, err};
}

inline bool worse(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

} // namespace detail

/// Adaptive integration of a finite-valued f over [a, b]. Bisects the panel
/// with the largest error estimate until the summed estimate falls below
/// max(abs_tol, rel_tol |I|). Each bisection counts as one subdivision.
template <class F>
QuadratureResult integrate_interval(const F& f, double a, double b, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!(a < b))
        throw Error(ErrorCode::InvalidArgument, "integration interval needs a < b");

    std::vector<detail::Panel> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 2);
    heap.push_back(detail::gauss_kronrod_panel(f, a, b));

    auto totals = [&heap] {
        double value = 0.0, error = 0.0;
        for (const auto& p : heap) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    int subdivisions = 0;
    auto [value, error] = totals();
    while (!(error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))) {
        if (!std::isfinite(value) || !std::isfinite(error))
            throw Error(ErrorCode::ToleranceNotReached, "integrand produced a non-finite value");
        if (subdivisions >= spec.max_subdivisions)
            throw Error(ErrorCode::ToleranceNotReached,
                        "error estimate " + std::to_string(error) + " after " + std::to_string(subdivisions) +
                            " subdivisions");
        std::pop_heap(heap.begin(), heap.end(), detail::worse);
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        heap.push_back(detail::gauss_kronrod_panel(f, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), detail::worse);
        heap.push_back(detail::gauss_kronrod_panel(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), detail::worse);
        ++subdivisions;
        std::tie(value, error) = totals();
    }
    return {value, error, subdivisions};
}

/// int_{-inf}^{inf} f(p) dp for f decaying at least like 1/p^2, via
/// p = scale tan(theta). scale should be the width of the integrand's core.
template <class F>
QuadratureResult integrate_real_line(const F& f, const QuadratureSpec& spec = {}, double scale = 1.0)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw Error(ErrorCode::InvalidArgument, "real-line scale must be finite and > 0");
    auto mapped = [&f, scale](double theta) {
        const double c = std::cos(theta);
        const double p = scale * std::sin(theta) / c;
        return f(p) * scale / (c * c);
    };
    const double half_pi = 0.5 * std::numbers::pi;
    return integrate_interval(mapped, -half_pi, half_pi, spec);
}

/// int_a^b f(z) dz for f with square-root behaviour at both ends, via
/// z = a + (b - a) sin^2(phi).
template <class F>
QuadratureResult integrate_band(const F& f, double a, double b, const QuadratureSpec& spec = {})
{
    if (!(a < b))
        throw Error(ErrorCode::InvalidArgument, "band integral needs a < b");
    const double width = b - a;
    auto mapped = [&f, a, b, width](double phi) {
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        double z = a + width * s * s;
        z = std::clamp(z, a, b);
        return f(z) * width * 2.0 * s * c;
    };
    return integrate_interval(mapped, 0.0, 0.5 * std::numbers::pi, spec);
}

} // namespace snyder
