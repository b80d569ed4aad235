#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "elastica/asymptotics.hpp"
#include "elastica/errors.hpp"
#include "elastica/fem.hpp"

using namespace elastica;
using namespace elastica::asymptotics;

namespace {

constexpr double kPi = std::numbers::pi;

Spectrum make(std::vector<SpectrumEntry> entries, double lambda_max, Domain d = Domain::UnitSquare,
              BoundaryCondition bc = BoundaryCondition::Dirichlet) {
    return {DomainGeometry::of(d), bc, LameParams(1.0, -1.0), lambda_max, SpectrumMethod::AnalyticDecoupled,
            std::move(entries), {}};
}

Spectrum square(double lmax, BoundaryCondition bc = BoundaryCondition::Dirichlet) {
    return fem::analytic_decoupled_spectrum(Domain::UnitSquare, 1.0, lmax, bc);
}

// brute-force lattice count for two copies of the Dirichlet Laplacian
long long lattice_count(double l) {
    long long n = 0;
    for (int p = 1; kPi * kPi * p * p < l; ++p)
        for (int q = 1; kPi * kPi * (p * p + q * q) < l; ++q) n += 2;
    return n;
}

}  // namespace

TEST(Counting, StrictInequalityAndEmpty) {
    const auto s = make({{1.0, 2, ""}, {2.0, 1, ""}}, 5.0);
    EXPECT_EQ(count_below(s, 2.0), 2);
    EXPECT_EQ(count_below(s, 2.0000001), 3);
    const auto e = make({}, 5.0);
    const auto c = counting(e, {1.0, 3.0, 5.0});
    for (long long v : c.values) EXPECT_EQ(v, 0);
    EXPECT_THROW(counting(s, {6.0}), RangeError);
    EXPECT_THROW(counting(s, {0.0}), RangeError);
}

TEST(Counting, SquareLatticeAndWeylSlope) {
    const auto s = square(1e4);
    const std::vector<double> grid{100.0, 1234.5, 5000.0, 1e4};
    const auto c = counting(s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(c.values[i], lattice_count(grid[i]));
    // boundary term pulls N/L below the slope by O(L^-1/2)
    EXPECT_NEAR(static_cast<double>(c.values.back()) / 1e4, 1.0 / (2 * kPi), 0.05 / (2 * kPi));
    const double slope = static_cast<double>(c.values[3] - c.values[2]) / 5000.0;
    EXPECT_NEAR(slope, 1.0 / (2 * kPi), 0.05 / (2 * kPi));
}

TEST(Remainder, SyntheticTwoTermIsExact) {
    // eigenvalues placed where a V L + b S sqrt(L) crosses each integer
    const double a = 0.3, b = -0.2, V = 1.0, S = 4.0;
    std::vector<SpectrumEntry> e;
    for (int k = 1; k <= 2000; ++k) {
        // solve a L + b S sqrt(L) = k for sqrt(L)
        const double r = (-b * S + std::sqrt(b * b * S * S + 4 * a * V * k)) / (2 * a * V);
        e.push_back({r * r, 1, ""});
    }
    const auto s = make(e, e.back().eigenvalue);
    // just above each eigenvalue N jumps to k, matching the planted curve there
    std::vector<double> grid;
    for (int k = 100; k <= 1900; k += 150) grid.push_back(std::nextafter(e[k - 1].eigenvalue, 1e300));
    const auto rs = remainder_series(counting(s, grid), a, s.domain);
    for (double r : rs.remainder) EXPECT_NEAR(r, b, 1e-9);
}

TEST(Remainder, CesaroClosedFormMatchesIntegration) {
    const auto s = square(3000.0);
    const double a = 1.0 / (2 * kPi);
    const double L = 2500.0;
    // trapezoid on a fine grid of the step remainder
    const int n = 400000;
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double l = L * (i - 0.5) / n;
        acc += (static_cast<double>(count_below(s, l)) - a * l) / (4.0 * std::sqrt(l));
    }
    EXPECT_NEAR(cesaro_mean(s, a, s.domain, L), acc / n, 2e-4);
}

TEST(Remainder, CesaroApproachesBoundaryCoefficient) {
    const auto s = square(1e4);
    const double target = -1.0 / (2 * kPi);
    for (double l : {500.0, 2000.0, 1e4}) {
        EXPECT_NEAR(cesaro_mean(s, 1.0 / (2 * kPi), s.domain, l), target, 0.1 * std::abs(target));
    }
}

TEST(HeatTrace, SingleEigenvalueAndShape) {
    const auto one = make({{1.0, 1, ""}}, 1e3);
    EXPECT_NEAR(heat_sum(one, 1.0), std::exp(-1.0), 1e-16);
    const auto s = square(2e4);
    std::vector<double> grid;
    for (int i = 0; i < 30; ++i) grid.push_back(0.01 + 0.03 * i);
    const auto z = heat_trace(s, grid);
    for (std::size_t i = 1; i + 1 < z.z.size(); ++i) {
        EXPECT_LT(z.z[i + 1], z.z[i]);
        // log-convex in t on an evenly spaced grid
        EXPECT_LE(std::log(z.z[i]), 0.5 * (std::log(z.z[i - 1]) + std::log(z.z[i + 1])) + 1e-12);
    }
}

TEST(HeatTrace, TailBoundErrorNamesMinimalT) {
    const auto s = square(1e3);
    const double tmin = min_admissible_t(s);
    EXPECT_NO_THROW(heat_trace(s, {tmin}));
    try {
        heat_trace(s, {0.5 * tmin});
        FAIL() << "expected TailBoundError";
    } catch (const TailBoundError& e) {
        EXPECT_DOUBLE_EQ(e.min_admissible_t(), tmin);
        EXPECT_NE(std::string(e.what()).find("lambda_max"), std::string::npos);
    }
}

TEST(HeatTrace, DoublingCutoffStaysWithinBound) {
    const auto s = square(5e3);
    const auto s2 = square(1e4);
    for (double t : {min_admissible_t(s), 0.02, 0.1}) {
        EXPECT_LE(std::abs(heat_sum(s2, t) - heat_sum(s, t)), heat_tail_bound(s, t));
    }
}

TEST(HeatTrace, SquareMatchesThreeTermExpansion) {
    const auto s = square(1e5);
    const double t = 1e-3;
    // two scalar Dirichlet Laplacians: 2 [1/(4 pi t) - 4/(8 sqrt(pi t)) + 4/16]
    const double expect = 2.0 * (1.0 / (4 * kPi * t) - 0.5 / std::sqrt(kPi * t) + 0.25);
    EXPECT_NEAR(heat_trace(s, {t}).z[0], expect, 5e-3 * expect);
}

TEST(HeatTrace, StieltjesConsistency) {
    const auto s = square(2e4);
    for (double t : {0.005, 0.05, 0.5}) EXPECT_LE(stieltjes_check(s, t).relative_gap, 1e-12);
}

TEST(Fit, PlantedHeatCoefficientsExact) {
    const auto x = log_grid(0.01, 1.0, 24);
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 / t + 0.5 / std::sqrt(t));
    FitOptions o;
    o.basis = HeatBasis::TwoTerm;
    const auto r = fit_two_term(x, y, FitModel::Heat, {DomainGeometry::of(Domain::UnitSquare), {}, {}}, o);
    EXPECT_NEAR(r.a_raw, 3.0, 1e-10);
    EXPECT_NEAR(r.b_raw, 0.5, 1e-10);
    EXPECT_NEAR(r.b_estimate, 0.5 / 4.0, 1e-10);
    EXPECT_LT(r.residual_norm, 1e-12);
    const auto w = fit_two_term(x, y, FitModel::Heat, {DomainGeometry::of(Domain::UnitSquare), {}, {}});
    EXPECT_NEAR(w.a_raw, 3.0, 1e-10);
    EXPECT_NEAR(w.b_raw, 0.5, 1e-10);
    EXPECT_NEAR(*w.c_raw, 0.0, 1e-10);
}

TEST(Fit, NoisyHeatRecovery) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1e-4, 1e-4);
    const auto x = log_grid(0.01, 1.0, 24);
    std::vector<double> y;
    for (double t : x) y.push_back((3.0 / t + 0.5 / std::sqrt(t)) * (1.0 + u(rng)));
    FitOptions o;
    o.basis = HeatBasis::TwoTerm;
    const auto r = fit_two_term(x, y, FitModel::Heat, {DomainGeometry::of(Domain::UnitSquare), {}, {}}, o);
    EXPECT_NEAR(r.a_raw, 3.0, 1e-3 * 3.0);
    EXPECT_NEAR(r.b_raw, 0.5, 1e-3 * 0.5 * 10);  // b is the weaker term
    EXPECT_NEAR(r.b_raw, 0.5, 5e-3);
}

TEST(Fit, ErrorsAndConditioning) {
    const std::vector<double> few{0.1, 0.2, 0.3};
    EXPECT_THROW(fit_two_term(few, few, FitModel::Heat, {DomainGeometry::of(Domain::UnitSquare), {}, {}}),
                 InputError);
    // nearly coincident samples make the basis degenerate
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
        x.push_back(1.0 + i * 1e-9);
        y.push_back(1.0);
    }
    EXPECT_THROW(fit_two_term(x, y, FitModel::Heat, {DomainGeometry::of(Domain::UnitSquare), {}, {}}),
                 ConditioningError);
    EXPECT_EQ(parse_fit_model("heat"), FitModel::Heat);
    EXPECT_THROW(parse_fit_model("both"), InputError);
}

TEST(Fit, SquareHeatWithinFivePercent) {
    const auto s = square(1e5);
    const auto r = fit_heat(s);
    const double target = -0.5 / std::sqrt(4 * kPi);  // per unit length
    EXPECT_NEAR(r.b_estimate, target, 0.05 * std::abs(target));
    ASSERT_EQ(r.discriminator.size(), 2u);
    EXPECT_NEAR(*r.discriminator[0].target, target, 1e-12);
    EXPECT_TRUE(r.stability.has_value());
    EXPECT_EQ(r.window_hi / r.window_lo, 10.0);
}

TEST(Fit, CountingWindowBeyondCutoff) {
    const auto s = square(1e4);
    EXPECT_THROW(fit_counting(s, std::pair{5e3, 2e4}), RangeError);
    const auto r = fit_counting(s, std::pair{5e3, 1e4});
    EXPECT_NEAR(r.b_estimate, -1.0 / (2 * kPi), 0.1 / (2 * kPi));
    EXPECT_DOUBLE_EQ(*r.shifted_window_lo, 2.5e3);
}

TEST(Fit, HeatWindowBelowTailBound) {
    const auto s = square(1e3);
    const double tmin = min_admissible_t(s);
    EXPECT_THROW(fit_heat(s, std::pair{0.1 * tmin, tmin}), TailBoundError);
}

TEST(Cancellation, SquareDecoupled) {
    const auto d = square(5e4);
    const auto f = square(5e4, BoundaryCondition::Free);
    const auto r = cancellation_empirical(d, f, d.domain, LameParams(1.0, -1.0));
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_LE(r.ratio, 0.1);
    EXPECT_NEAR(r.b_tilde_minus_fit, -r.b_tilde_plus_fit, 0.1 * std::abs(r.b_tilde_minus_fit));
}

TEST(Cancellation, SyntheticExactSpectra) {
    // planted counting functions with b+ = -b-: eigenvalues where a L -/+ c sqrt(L) crosses integers
    const double a = 1.0 / (2 * kPi), c = 4.0 / (2 * kPi);
    auto build = [&](double sign) {
        std::vector<SpectrumEntry> e;
        for (int k = 1; k <= 20000; ++k) {
            const double r = (-sign * c + std::sqrt(c * c + 4 * a * k)) / (2 * a);
            e.push_back({r * r, 1, ""});
        }
        return e;
    };
    auto dm = make(build(-1.0), 1e5);
    auto fp = make(build(1.0), 1e5, Domain::UnitSquare, BoundaryCondition::Free);
    std::erase_if(dm.entries, [](const SpectrumEntry& x) { return x.eigenvalue > 1e5; });
    std::erase_if(fp.entries, [](const SpectrumEntry& x) { return x.eigenvalue > 1e5; });
    const auto r = cancellation_empirical(dm, fp, dm.domain, LameParams(1.0, -1.0));
    // step functions only follow the planted curves up to discretization terms
    EXPECT_LE(r.ratio, 5e-3);
}

TEST(Cancellation, MismatchedInputs) {
    const auto d = square(1e3);
    const auto d2 = square(2e3);
    const auto f = square(1e3, BoundaryCondition::Free);
    EXPECT_THROW(cancellation_empirical(d, d, d.domain, LameParams(1, -1)), InputError);
    EXPECT_THROW(cancellation_empirical(d2, f, d.domain, LameParams(1, -1)), InputError);
}
