#include "elastica/elastic_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elastica/errors.hpp"
#include "elastica/specfun.hpp"

namespace elastica {
namespace {

constexpr double kPi = std::numbers::pi;

// mu^{(1-n)/2} / (2^{n+1} pi^{(n-1)/2} Gamma((n+1)/2))
double boundary_prefactor(double mu, int n) {
    const double half = 0.5 * (n - 1);
    return std::pow(mu, -half) /
           (std::pow(2.0, n + 1) * std::pow(kPi, half) * specfun::gamma_fn(0.5 * (n + 1)));
}

}  // namespace

LameParams::LameParams(double mu, double lambda) : mu_(mu), lambda_(lambda) {
    if (!std::isfinite(mu) || !std::isfinite(lambda)) {
        throw ParameterDomainError("Lame parameters must be finite");
    }
    if (!(mu > 0.0)) {
        throw ParameterDomainError("shear modulus mu must be positive, got " + std::to_string(mu));
    }
    if (!(mu + lambda >= 0.0)) {
        throw ParameterDomainError("Lame parameters require mu + lambda >= 0, got mu=" +
                                   std::to_string(mu) + " lambda=" + std::to_string(lambda));
    }
}

std::string_view to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "free";
}

BoundaryCondition parse_boundary_condition(std::string_view s) {
    if (s == "dirichlet") return BoundaryCondition::Dirichlet;
    if (s == "free") return BoundaryCondition::Free;
    throw InputError("unknown boundary condition '" + std::string(s) + "'");
}

std::string_view to_string(Domain d) { return d == Domain::UnitDisk ? "disk" : "square"; }

Domain parse_domain(std::string_view s) {
    if (s == "disk") return Domain::UnitDisk;
    if (s == "square") return Domain::UnitSquare;
    throw InputError("unknown domain '" + std::string(s) + "'");
}

DomainGeometry DomainGeometry::of(Domain d) {
    if (d == Domain::UnitDisk) return {d, kPi, 2.0 * kPi, 2};
    return {d, 1.0, 4.0, 2};
}

std::string_view to_string(Theory t) { return t == Theory::CFLV ? "cflv" : "liu"; }

std::string_view to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

void check_dimension(int n) {
    if (n < kMinDimension || n > kMaxDimension) {
        throw ParameterDomainError("dimension n must lie in [2, 10], got " + std::to_string(n));
    }
}

double rayleigh_polynomial(double alpha, double w) {
    return ((w - 8.0) * w + 8.0 * (3.0 - 2.0 * alpha)) * w + 16.0 * (alpha - 1.0);
}

RayleighRoot rayleigh_root(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterDomainError("rayleigh_root: alpha must lie in (0, 1], got " +
                                   std::to_string(alpha));
    }
    if (alpha == 1.0) return {alpha, 0.0, 0.0, 0.0};

    auto r = [alpha](double w) { return rayleigh_polynomial(alpha, w); };
    auto dr = [alpha](double w) { return (3.0 * w - 16.0) * w + 8.0 * (3.0 - 2.0 * alpha); };
    // R(0) = 16(alpha - 1) < 0 and R(1) = 1 > 0
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (r(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    double w = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double step = r(w) / dr(w);
        const double next = w - step;
        if (!(next > lo && next < hi)) break;
        w = next;
        if (std::abs(step) < 1e-17) break;
    }
    const double root = std::sqrt(w);
    return {alpha, w, root, std::abs(r(w))};
}

double weyl_a(const LameParams& params, int n) {
    check_dimension(n);
    const double half = 0.5 * n;
    return ((n - 1) / std::pow(params.mu(), half) + 1.0 / std::pow(params.p_modulus(), half)) /
           (std::pow(4.0 * kPi, half) * specfun::gamma_fn(1.0 + half));
}

double cflv_integral(double alpha, int n, BoundaryCondition bc) {
    const double lo = std::sqrt(alpha);
    if (lo >= 1.0) return 0.0;
    specfun::QuadratureSpec spec;
    spec.scheme = specfun::QuadratureScheme::DoubleExponential;
    spec.rel_tol = 1e-13;
    spec.max_refinements = 12;
    specfun::RealFunction f;
    if (bc == BoundaryCondition::Dirichlet) {
        f = [alpha, n](double tau) {
            const double inv2 = 1.0 / (tau * tau);
            const double prod = std::max(0.0, (1.0 - alpha * inv2) * (inv2 - 1.0));
            return std::pow(tau, n - 2) * std::atan(std::sqrt(prod));
        };
    } else {
        f = [alpha, n](double tau) {
            const double inv2 = 1.0 / (tau * tau);
            const double prod = std::max(0.0, (1.0 - alpha * inv2) * (inv2 - 1.0));
            const double num = (inv2 - 2.0) * (inv2 - 2.0);
            const double den = 4.0 * std::sqrt(prod);
            return std::pow(tau, n - 2) * std::atan2(num, den);
        };
    }
    const auto result = specfun::integrate(f, lo, 1.0, spec);
    if (!result.converged || result.error_estimate > 1e-10 * std::abs(result.value)) {
        throw ConvergenceError("cflv_integral: quadrature missed the 1e-10 target (estimate " +
                               std::to_string(result.error_estimate) + ")");
    }
    return result.value;
}

double b_cflv(const LameParams& params, int n, BoundaryCondition bc) {
    check_dimension(n);
    const double alpha = params.alpha();
    const double pref = boundary_prefactor(params.mu(), n);
    const double integral = (4.0 * (n - 1) / kPi) * cflv_integral(alpha, n, bc);
    const double alpha_term = std::pow(alpha, 0.5 * (n - 1));
    if (bc == BoundaryCondition::Dirichlet) {
        return -pref * (integral + alpha_term + (n - 1));
    }
    const RayleighRoot rr = rayleigh_root(alpha);
    if (rr.gamma_r == 0.0) {
        throw SingularLimitError(
            "b_cflv(free) is singular at alpha = 1: gamma_R = 0 and the term 4 gamma_R^(1-n) "
            "diverges for n >= 2; the finite alpha -> 1 value (n - 4) quoted for this limit "
            "drops that term, so no value is returned");
    }
    return pref * (integral + alpha_term + (n - 5) + 4.0 * std::pow(rr.gamma_r, 1 - n));
}

double b_liu(const LameParams& params, int n, BoundaryCondition bc) {
    check_dimension(n);
    const double magnitude = boundary_prefactor(params.mu(), n) *
                             (std::pow(params.alpha(), 0.5 * (n - 1)) + (n - 1));
    return bc == BoundaryCondition::Dirichlet ? -magnitude : magnitude;
}

WeylTwoTerm weyl_two_term(const LameParams& params, int n, Theory theory) {
    WeylTwoTerm w{theory, n, weyl_a(params, n), 0.0, 0.0};
    if (theory == Theory::Liu) {
        w.b_minus = b_liu(params, n, BoundaryCondition::Dirichlet);
        w.b_plus = -w.b_minus;
    } else {
        w.b_minus = b_cflv(params, n, BoundaryCondition::Dirichlet);
        w.b_plus = b_cflv(params, n, BoundaryCondition::Free);
    }
    return w;
}

HeatTwoTerm to_heat_coeffs(const WeylTwoTerm& w) {
    check_dimension(w.n);
    const double ga = specfun::gamma_fn(1.0 + 0.5 * w.n);
    const double gb = specfun::gamma_fn(1.0 + 0.5 * (w.n - 1));
    return {w.n, ga * w.a, gb * w.b_minus, gb * w.b_plus};
}

HeatTwoTerm heat_coeffs_direct(const LameParams& params, int n) {
    check_dimension(n);
    const double half = 0.5 * n;
    const double half_b = 0.5 * (n - 1);
    const double a_tilde = ((n - 1) / std::pow(params.mu(), half) +
                            1.0 / std::pow(params.p_modulus(), half)) /
                           std::pow(4.0 * kPi, half);
    const double b_mag = ((n - 1) / std::pow(params.mu(), half_b) +
                          1.0 / std::pow(params.p_modulus(), half_b)) /
                         (4.0 * std::pow(4.0 * kPi, half_b));
    return {n, a_tilde, -b_mag, b_mag};
}

SumTestResult sum_test(const LameParams& params, int n, Theory theory) {
    const WeylTwoTerm w = weyl_two_term(params, n, theory);
    const double sum = w.b_minus + w.b_plus;
    const double scale = std::max(std::abs(w.b_minus), std::abs(w.b_plus));
    const Verdict v = std::abs(sum) <= 1e-12 * scale ? Verdict::Pass : Verdict::Fail;
    return {theory, w.b_minus, w.b_plus, sum, v};
}

}  // namespace elastica
