#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "elastica/elastic_core.hpp"
#include "elastica/errors.hpp"

using namespace elastica;

namespace {

constexpr double kPi = std::numbers::pi;

double bisect_rayleigh(double alpha) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        (rayleigh_polynomial(alpha, m) < 0.0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

double prefactor(double mu, int n) {
    return std::pow(mu, -0.5 * (n - 1)) /
           (std::pow(2.0, n + 1) * std::pow(kPi, 0.5 * (n - 1)) * std::tgamma(0.5 * (n + 1)));
}

// brute-force midpoint sum of the boundary integrals
double midpoint_integral(double alpha, int n, bool free_bc, int panels = 1000000) {
    const double lo = std::sqrt(alpha);
    const double h = (1.0 - lo) / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double tau = lo + (i + 0.5) * h;
        const double inv2 = 1.0 / (tau * tau);
        const double prod = (1.0 - alpha * inv2) * (inv2 - 1.0);
        const double v = free_bc ? std::atan2((inv2 - 2.0) * (inv2 - 2.0), 4.0 * std::sqrt(prod))
                                 : std::atan(std::sqrt(prod));
        s += std::pow(tau, n - 2) * v;
    }
    return s * h;
}

double cflv_oracle(double mu, double lambda, int n, bool free_bc) {
    const double alpha = mu / (lambda + 2 * mu);
    const double integral = 4.0 * (n - 1) / kPi * midpoint_integral(alpha, n, free_bc);
    const double at = std::pow(alpha, 0.5 * (n - 1));
    if (!free_bc) return -prefactor(mu, n) * (integral + at + n - 1);
    const double g = std::sqrt(bisect_rayleigh(alpha));
    return prefactor(mu, n) * (integral + at + n - 5 + 4.0 * std::pow(g, 1 - n));
}

}  // namespace

TEST(LameParams, Validation) {
    EXPECT_THROW(LameParams(0.0, 1.0), ParameterDomainError);
    EXPECT_THROW(LameParams(-1.0, 1.0), ParameterDomainError);
    EXPECT_THROW(LameParams(1.0, -1.5), ParameterDomainError);
    EXPECT_THROW(LameParams(NAN, 1.0), ParameterDomainError);
    const LameParams p(1.0, -1.0);
    EXPECT_EQ(p.alpha(), 1.0);
    EXPECT_TRUE(p.decoupled());
    EXPECT_DOUBLE_EQ(LameParams(1.0, 1.0).alpha(), 1.0 / 3.0);
    EXPECT_THROW(check_dimension(1), ParameterDomainError);
    EXPECT_THROW(check_dimension(11), ParameterDomainError);
}

TEST(Geometry, UnitDomains) {
    const auto d = DomainGeometry::of(Domain::UnitDisk);
    EXPECT_DOUBLE_EQ(d.volume, kPi);
    EXPECT_DOUBLE_EQ(d.boundary_length, 2 * kPi);
    const auto s = DomainGeometry::of(Domain::UnitSquare);
    EXPECT_EQ(s.volume, 1.0);
    EXPECT_EQ(s.boundary_length, 4.0);
    EXPECT_EQ(parse_domain("disk"), Domain::UnitDisk);
    EXPECT_EQ(parse_boundary_condition("free"), BoundaryCondition::Free);
    EXPECT_THROW(parse_domain("cube"), InputError);
}

TEST(WeylA, ReferenceValues) {
    EXPECT_NEAR(weyl_a(LameParams(1, -1), 2), 1.0 / (2 * kPi), 1e-15);
    EXPECT_NEAR(weyl_a(LameParams(1, 1), 2), 1.0 / (3 * kPi), 1e-15);
    EXPECT_NEAR(weyl_a(LameParams(1, -1), 3), 3.0 / (std::pow(4 * kPi, 1.5) * 0.75 * std::sqrt(kPi)), 1e-15);
    EXPECT_NEAR(weyl_a(LameParams(1, -1), 3), 0.0506606, 1e-7);
}

TEST(WeylA, PositiveAndDecreasingInMu) {
    const double pm = 5.0;
    for (int n = 2; n <= 6; ++n) {
        double prev = INFINITY;
        for (double mu = 0.2; mu <= 2.5; mu += 0.1) {
            const double a = weyl_a(LameParams(mu, pm - 2 * mu), n);
            EXPECT_GT(a, 0.0);
            EXPECT_LT(a, prev);
            prev = a;
        }
    }
}

TEST(Rayleigh, ResidualBracketAndOracle) {
    for (int i = 1; i <= 100; ++i) {
        const double alpha = i / 100.0;
        const auto r = rayleigh_root(alpha);
        EXPECT_LE(r.residual, 1e-12);
        if (alpha < 1.0) {
            EXPECT_GT(r.w1, 0.0);
            EXPECT_LT(r.w1, 1.0);
            EXPECT_NEAR(r.w1, bisect_rayleigh(alpha), 1e-12);
            int changes = 0;
            for (int k = 0; k < 1000; ++k) {
                changes += (rayleigh_polynomial(alpha, k * 1e-3) < 0) != (rayleigh_polynomial(alpha, (k + 1) * 1e-3) < 0);
            }
            EXPECT_EQ(changes, 1);
        }
    }
    const auto one = rayleigh_root(1.0);
    EXPECT_EQ(one.w1, 0.0);
    EXPECT_EQ(one.gamma_r, 0.0);
    const auto third = rayleigh_root(1.0 / 3.0);
    EXPECT_NEAR(third.w1, 0.8453, 1e-4);
    EXPECT_NEAR(third.gamma_r, 0.9194, 1e-4);
    EXPECT_EQ(rayleigh_polynomial(0.5, 0.0), -8.0);
    EXPECT_EQ(rayleigh_polynomial(0.5, 1.0), 1.0);
    EXPECT_THROW(rayleigh_root(0.0), ParameterDomainError);
}

TEST(BCflv, DecoupledDirichletCollapses) {
    EXPECT_NEAR(b_cflv(LameParams(1, -1), 2, BoundaryCondition::Dirichlet), -1.0 / (2 * kPi), 1e-15);
    for (int n : {2, 3, 4}) {
        const LameParams p(1.7, -1.7);
        const double c = b_cflv(p, n, BoundaryCondition::Dirichlet);
        const double l = b_liu(p, n, BoundaryCondition::Dirichlet);
        EXPECT_LE(std::abs(c - l), 1e-12 * std::abs(l));
    }
}

TEST(BCflv, MatchesMidpointOracle) {
    struct Case {
        double mu, lambda;
        int n;
    };
    for (const Case c : {Case{1, 1, 2}, Case{1, 1, 3}, Case{1, 2, 2}, Case{2.5, 0.3, 2}}) {
        const LameParams p(c.mu, c.lambda);
        for (bool free_bc : {false, true}) {
            const double got = b_cflv(p, c.n, free_bc ? BoundaryCondition::Free : BoundaryCondition::Dirichlet);
            const double ref = cflv_oracle(c.mu, c.lambda, c.n, free_bc);
            EXPECT_NEAR(got, ref, 1e-7 * std::abs(ref)) << c.mu << " " << c.lambda << " " << c.n << " " << free_bc;
        }
    }
    const double bm = b_cflv(LameParams(1, 1), 2, BoundaryCondition::Dirichlet);
    EXPECT_LT(bm, 0.0);
    EXPECT_GT(bm, -1.0 / (2 * kPi));
}

TEST(BCflv, FreeSingularAtAlphaOne) {
    EXPECT_THROW(b_cflv(LameParams(1, -1), 2, BoundaryCondition::Free), SingularLimitError);
    EXPECT_THROW(weyl_two_term(LameParams(1, -1), 3, Theory::CFLV), SingularLimitError);
}

TEST(BLiu, SignSymmetry) {
    EXPECT_NEAR(b_liu(LameParams(1, -1), 2, BoundaryCondition::Dirichlet), -1.0 / (2 * kPi), 1e-15);
    EXPECT_NEAR(b_liu(LameParams(1, -1), 2, BoundaryCondition::Free), 1.0 / (2 * kPi), 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double mu = u(rng);
        const LameParams p(mu, u(rng) - mu);
        const int n = 2 + i % 9;
        EXPECT_EQ(b_liu(p, n, BoundaryCondition::Dirichlet) + b_liu(p, n, BoundaryCondition::Free), 0.0);
        const auto st = sum_test(p, n, Theory::Liu);
        EXPECT_EQ(st.sum, 0.0);
        EXPECT_EQ(st.verdict, Verdict::Pass);
    }
}

TEST(HeatCoeffs, GammaFactors) {
    const LameParams p(1.3, 0.4);
    for (int n : {2, 3, 4}) {
        const auto w = weyl_two_term(p, n, Theory::CFLV);
        const auto h = to_heat_coeffs(w);
        EXPECT_NEAR(h.a_tilde, std::tgamma(1 + 0.5 * n) * w.a, 1e-15 * h.a_tilde);
        EXPECT_NEAR(h.b_tilde_minus, std::tgamma(1 + 0.5 * (n - 1)) * w.b_minus, 1e-15 * std::abs(h.b_tilde_minus));
        EXPECT_NEAR(h.b_tilde_plus, std::tgamma(1 + 0.5 * (n - 1)) * w.b_plus, 1e-15 * std::abs(h.b_tilde_plus));
    }
    const auto w2 = weyl_two_term(p, 2, Theory::Liu);
    EXPECT_NEAR(to_heat_coeffs(w2).a_tilde, w2.a, 1e-16);
    EXPECT_NEAR(to_heat_coeffs(w2).b_tilde_minus, std::sqrt(kPi) / 2 * w2.b_minus, 1e-16);
}

TEST(HeatCoeffs, DirectMatchesConvertedLiu) {
    for (int n = 2; n <= 6; ++n) {
        const LameParams p(0.8, 1.9);
        const auto d = heat_coeffs_direct(p, n);
        const auto c = to_heat_coeffs(weyl_two_term(p, n, Theory::Liu));
        EXPECT_NEAR(d.a_tilde, c.a_tilde, 1e-14 * d.a_tilde);
        EXPECT_NEAR(d.b_tilde_minus, c.b_tilde_minus, 1e-14 * std::abs(d.b_tilde_minus));
    }
}

TEST(SumTest, CflvNonvanishing) {
    for (auto [mu, lambda, n] : {std::tuple{1.0, 1.0, 2}, {1.0, 1.0, 3}, {1.0, 2.0, 2}}) {
        const auto st = sum_test(LameParams(mu, lambda), n, Theory::CFLV);
        EXPECT_EQ(st.verdict, Verdict::Fail);
        EXPECT_GT(std::abs(st.sum), 1e-3 * std::max(std::abs(st.b_minus), std::abs(st.b_plus)));
    }
}
