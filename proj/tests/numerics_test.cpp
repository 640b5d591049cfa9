#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "snyder/numerics.hpp"

using namespace snyder;
using std::numbers::pi;

TEST(PhaseIntegralNumeric, UndeformedRadial)
{
    const auto r = phase_integral_numeric(unit_params(0.0), 0.125, 1);
    EXPECT_NEAR(r.value, 2 * pi, 1e-10);
    EXPECT_EQ(r.kind, IntegralKind::numeric);
    EXPECT_GT(r.err_estimate, 0.0);
}

TEST(PhaseIntegralNumeric, DeformedRadialMatchesClosedForm)
{
    const auto p = unit_params(0.1);
    const double num = phase_integral_numeric(p, 0.125, 1).value;
    EXPECT_NEAR(num / radial_phase_integral_closed(p, 0.125, 1).value, 1.0, 1e-8);
    EXPECT_NEAR(num, 1.9901227376726086314 * pi, 1e-10);
}

TEST(PhaseIntegralNumeric, OneDimensionalAtExactRoot)
{
    const auto p = unit_params(0.1);
    const double E = energy_1d_closed(p, 1);
    EXPECT_NEAR(phase_integral_numeric(p, E, 0).value, 2 * pi, 1e-10);
}

TEST(PhaseIntegralNumeric, CircularEdgeGivesZero)
{
    EXPECT_EQ(phase_integral_numeric(unit_params(0.05), 0.5, 1).value, 0.0);
}

TEST(PhaseIntegralNumeric, OutOfWindow)
{
    try {
        phase_integral_numeric(unit_params(0.1), 0.7, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfWindow);
    }
}

TEST(PhaseIntegralNumeric, OracleEquivalenceGrid)
{
    int points = 0;
    double worst = 0.0;
    for (double beta : {0.0, 0.01, 0.05, 0.1, 0.3})
        for (int l : {0, 1, 2, 3, 4})
            for (double f : {0.003, 0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999}) {
                const auto p = unit_params(beta);
                const double E = l == 0 ? f : f * energy_window(p, l).e_max;
                if (!energy_window(p, l).contains_strictly(E))
                    continue;
                const double closed = phase_integral_closed(p, E, l).value;
                const double num = phase_integral_numeric(p, E, l).value;
                worst = std::max(worst, std::abs(num - closed) / closed);
                ++points;
            }
    EXPECT_GE(points, 100);
    EXPECT_LE(worst, 1e-8);
}

TEST(SolveBsEnergy, UndeformedLevel)
{
    const auto qn = QuantumNumbers::from_radial(1, 1);
    EXPECT_NEAR(solve_bs_energy(unit_params(0.0), qn, SolveMethod::closed_form) / 0.125, 1.0, 1e-11);
    EXPECT_NEAR(solve_bs_energy(unit_params(0.0), qn, SolveMethod::numeric) / 0.125, 1.0, 1e-9);
}

TEST(SolveBsEnergy, DeformedPWaveFrozen)
{
    // Root of the radial integral = 2 pi at beta = 0.1 (40-digit reference).
    const auto qn = QuantumNumbers::from_radial(1, 1);
    const double ref = 0.12438343696685148;
    EXPECT_NEAR(solve_bs_energy(unit_params(0.1), qn, SolveMethod::closed_form) / ref, 1.0, 1e-11);
    EXPECT_NEAR(solve_bs_energy(unit_params(0.1), qn, SolveMethod::numeric) / ref, 1.0, 1e-9);
}

TEST(SolveBsEnergy, OneDimensionalNumericMatchesExactRoot)
{
    const auto p = unit_params(0.1);
    const double E = solve_bs_energy(p, QuantumNumbers::from_radial(1, 0), SolveMethod::numeric);
    EXPECT_NEAR(E / energy_1d_closed(p, 1), 1.0, 1e-8);
    EXPECT_NEAR(E, 0.4196011, 1e-7);
}

TEST(SolveBsEnergy, SeriesResidualIsFourthOrder)
{
    // (E_solved - E_series)/E_0 for the l = 1 channel; halving beta should
    // divide it by 16.
    const auto qn = QuantumNumbers::from_principal(2, 1);
    std::vector<double> betas = {0.0125, 0.025, 0.05, 0.1};
    std::vector<double> residuals;
    for (double b : betas) {
        const auto p = unit_params(b);
        SolverOptions opt;
        opt.root_rel_tol = 1e-15;
        const double e = solve_bs_energy(p, qn, SolveMethod::closed_form, opt);
        residuals.push_back((e - energy_3d_series(p, qn)) / newtonian_energy(p, 2));
    }
    const auto fit = fit_loglog(betas, residuals);
    EXPECT_NEAR(fit.slope, 4.0, 0.1);
}

TEST(SolveBsEnergy, ResidualAndMethodAgreement)
{
    for (double beta : {0.0, 0.02, 0.1})
        for (int np = 1; np <= 5; ++np)
            for (int l = 0; l < np; ++l) {
                const auto p = unit_params(beta);
                const auto qn = QuantumNumbers::from_principal(np, l);
                const double target = 2 * pi * qn.n();
                const double ec = solve_bs_energy(p, qn, SolveMethod::closed_form);
                const double en = solve_bs_energy(p, qn, SolveMethod::numeric);
                EXPECT_LE(std::abs(phase_integral_closed(p, ec, l).value - target), 1e-10 * target);
                EXPECT_LE(std::abs(phase_integral_numeric(p, en, l).value - target), 1e-10 * target);
                EXPECT_NEAR(ec / en, 1.0, 1e-8) << beta << " " << np << " " << l;
            }
}

TEST(SolveBsEnergy, NoRootWhenDeformationTooLarge)
{
    // For beta > 2n the 1D integral stays above 2 pi n up to the window edge.
    try {
        solve_bs_energy(unit_params(3.0), QuantumNumbers::from_radial(1, 0), SolveMethod::closed_form);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRootInWindow);
    }
}

TEST(SpectrumTable, UndeformedDegenerate)
{
    const auto rows = spectrum_table(unit_params(0.0), 3);
    ASSERT_EQ(rows.size(), 6u);
    int k = 0;
    for (int np = 1; np <= 3; ++np)
        for (int l = 0; l < np; ++l, ++k) {
            const auto& r = rows[k];
            EXPECT_EQ(r.qn.n_prime(), np);
            EXPECT_EQ(r.qn.l(), l);
            EXPECT_TRUE(r.ok());
            const double e0 = 1.0 / (2.0 * np * np);
            EXPECT_NEAR(r.e_closed / e0, 1.0, 1e-10);
            EXPECT_NEAR(r.e_numeric / e0, 1.0, 1e-8);
            EXPECT_DOUBLE_EQ(r.e_series, e0);
            EXPECT_DOUBLE_EQ(r.e_newton, e0);
        }
}

TEST(SpectrumTable, GroundStateOnly)
{
    const auto rows = spectrum_table(unit_params(0.0), 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].e_closed, 0.5, 1e-12);
    EXPECT_NEAR(rows[0].e_numeric, 0.5, 1e-9);
    EXPECT_EQ(rows[0].e_series, 0.5);
    EXPECT_EQ(rows[0].e_newton, 0.5);
    EXPECT_TRUE(std::isnan(rows[0].e_perturbative_ref));
}

TEST(SpectrumTable, DeformedShiftsDown)
{
    const auto rows = spectrum_table(unit_params(0.1), 4);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_NEAR(rows[0].e_closed, 0.4196011, 1e-7);
    EXPECT_LT(rows[2].e_closed, 0.125);  // (n'=2, l=1)
    for (const auto& r : rows) {
        ASSERT_TRUE(r.ok()) << r.error;
        EXPECT_LT(r.e_closed, r.e_newton);
    }
}

TEST(SpectrumTable, ErrorsRecordedPerEntry)
{
    const auto rows = spectrum_table(unit_params(3.0), 2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_FALSE(rows[0].ok());
    EXPECT_NE(rows[0].error.find("NoRootInWindow"), std::string::npos);
    EXPECT_THROW(spectrum_table(unit_params(0.0), 0), Error);
}

TEST(FitLogLog, RecoversPowerLaw)
{
    std::vector<double> x = {1, 2, 4, 8};
    std::vector<double> y;
    for (double v : x)
        y.push_back(-3.0 * v * v * v);
    const auto fit = fit_loglog(x, y);
    EXPECT_NEAR(fit.slope, 3.0, 1e-12);
    EXPECT_NEAR(std::exp(fit.intercept), 3.0, 1e-12);
    EXPECT_NEAR(fit.residual_rms, 0.0, 1e-12);
    std::vector<double> zeros(4, 0.0);
    EXPECT_THROW(fit_loglog(x, zeros), Error);
}

TEST(CorrectionOrder, SWaveIsFirstOrderOthersSecond)
{
    std::vector<double> grid;
    for (int i = 0; i < 7; ++i)
        grid.push_back(std::pow(10.0, -4.0 + i / 3.0));
    const auto base = unit_params(0.0);
    EXPECT_NEAR(correction_order(base, QuantumNumbers::from_radial(1, 0), grid).slope, 1.0, 0.02);
    EXPECT_NEAR(correction_order(base, QuantumNumbers::from_radial(1, 1), grid).slope, 2.0, 0.02);
    EXPECT_NEAR(correction_order(base, QuantumNumbers::from_radial(1, 2), grid).slope, 2.0, 0.02);
}

TEST(CorrectionOrder, GridValidation)
{
    const auto base = unit_params(0.0);
    const auto qn = QuantumNumbers::from_radial(1, 0);
    std::vector<double> short_grid = {1e-4, 1e-3, 1e-2};
    EXPECT_THROW(correction_order(base, qn, short_grid), Error);
    std::vector<double> narrow = {1e-3, 2e-3, 4e-3, 8e-3};
    EXPECT_THROW(correction_order(base, qn, narrow), Error);
    std::vector<double> tiny = {1e-30, 1e-29, 1e-28, 1e-27};
    try {
        correction_order(base, QuantumNumbers::from_radial(1, 1), tiny);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
    }
}

TEST(CorrectionCoefficient, MatchesSeries)
{
    std::vector<double> grid = {1e-4, 2e-4, 5e-4, 1e-3};
    const auto base = unit_params(0.0);
    for (auto qn : {QuantumNumbers::from_radial(1, 0), QuantumNumbers::from_radial(2, 0),
                    QuantumNumbers::from_radial(1, 1), QuantumNumbers::from_radial(2, 1)}) {
        const int order = qn.l() == 0 ? 1 : 2;
        const double c = correction_coefficient(base, qn, grid, order);
        EXPECT_NEAR(c / series_coefficient(base, qn), 1.0, 0.01) << qn.n() << " " << qn.l();
    }
}

TEST(LLimitStudy, UndeformedGapVanishes)
{
    std::vector<double> ls = {1e-1, 1e-3, 1e-6};
    const auto study = l_limit_study(unit_params(0.0), 0.125, ls);
    ASSERT_EQ(study.rows.size(), 3u);
    for (const auto& r : study.rows) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_LE(std::abs(r.gap), 1e-10);
    }
    EXPECT_NEAR(study.phi_3d_limit, study.phi_1d, 1e-13);
}

TEST(LLimitStudy, DeformedLimitCoincidesWithOneDimensional)
{
    std::vector<double> ls = {1e-2, 1e-4, 1e-6, 1e-8};
    const auto study = l_limit_study(unit_params(0.1), 0.125, ls);
    EXPECT_NEAR(study.phi_3d_limit / study.phi_1d, 1.0, 1e-14);
    // gap -> 0 linearly in l once l << beta
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        EXPECT_LT(std::abs(study.rows[i].gap), std::abs(study.rows[i - 1].gap));
    EXPECT_LT(std::abs(study.rows.back().gap), 1e-6);
}

TEST(LLimitStudy, OutOfWindowRows)
{
    std::vector<double> ls = {1e-3, 2.0};
    const auto study = l_limit_study(unit_params(0.1), 0.2, ls);
    EXPECT_TRUE(study.rows[0].error.empty());
    EXPECT_FALSE(study.rows[1].error.empty());  // me^4/(2 l^2) = 0.125 < 0.2
}
