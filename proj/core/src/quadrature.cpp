#include <array>
#include <cmath>
#include <numbers>

#include "elastica/errors.hpp"
#include "elastica/specfun.hpp"

namespace elastica::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// tanh-sinh nodes are generated for |t| <= kTanhSinhSpan; beyond it weights fall under 1e-37.
constexpr double kTanhSinhSpan = 4.0;

// Contribution of the symmetric node pair at +-t (or the single node t = 0).
// Uses the complement 1 - tanh(u) directly so that nodes next to the endpoints are exact.
double tanh_sinh_pair(const RealFunction& f, double a, double b, double t, double& abs_sum) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    const double u = kHalfPi * std::sinh(t);
    const double eu = std::exp(u);
    const double cosh_u = 0.5 * (eu + 1.0 / eu);
    const double weight = d * kHalfPi * std::cosh(t) / (cosh_u * cosh_u);
    if (t == 0.0) {
        const double v = f(c);
        abs_sum += weight * std::abs(v);
        return weight * v;
    }
    const double delta = 2.0 / (1.0 + eu * eu);  // 1 - tanh(u) for u > 0
    const double right = b - d * delta;
    const double left = a + d * delta;
    double s = 0.0;
    if (right < b && right > a) {
        const double v = f(right);
        if (std::isfinite(v)) {
            s += weight * v;
            abs_sum += weight * std::abs(v);
        }
    }
    if (left > a && left < b) {
        const double v = f(left);
        if (std::isfinite(v)) {
            s += weight * v;
            abs_sum += weight * std::abs(v);
        }
    }
    return s;
}

QuadratureResult tanh_sinh(const RealFunction& f, double a, double b, double rel_tol,
                           int max_refinements) {
    QuadratureResult out;
    double abs_sum = 0.0;
    // level 0: unit step
    double sum = tanh_sinh_pair(f, a, b, 0.0, abs_sum);
    for (int j = 1; j <= static_cast<int>(kTanhSinhSpan); ++j) {
        sum += tanh_sinh_pair(f, a, b, static_cast<double>(j), abs_sum);
    }
    double h = 1.0;
    double estimate = h * sum;
    for (int level = 1; level <= max_refinements; ++level) {
        h *= 0.5;
        double added = 0.0;
        const int n_new = static_cast<int>(kTanhSinhSpan / h);
        for (int j = 1; j <= n_new; j += 2) {
            added += tanh_sinh_pair(f, a, b, j * h, abs_sum);
        }
        sum += added;
        const double next = h * sum;
        const double change = std::abs(next - estimate);
        estimate = next;
        out.refinements = level;
        out.error_estimate = change;
        const double scale = std::max(std::abs(next), 1e-15 * h * abs_sum);
        if (level >= 3 && change <= rel_tol * scale) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    return out;
}

// 10-point Gauss-Legendre rule on [-1, 1], nodes from Newton on P_10.
struct GaussRule {
    std::array<double, 10> x{};
    std::array<double, 10> w{};
    GaussRule() {
        constexpr int n = 10;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) {
                    x[i] = z;
                    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                    break;
                }
            }
        }
    }
};

const GaussRule& gauss_rule() {
    static const GaussRule rule;
    return rule;
}

double gauss_panels(const RealFunction& f, double a, double b, int panels, double& abs_sum) {
    const auto& rule = gauss_rule();
    const double width = (b - a) / panels;
    double total = 0.0;
    abs_sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double v = f(mid + 0.5 * width * rule.x[i]);
            s += rule.w[i] * v;
            abs_sum += rule.w[i] * std::abs(v) * 0.5 * width;
        }
        total += 0.5 * width * s;
    }
    return total;
}

QuadratureResult gauss_composite(const RealFunction& f, double a, double b, double rel_tol,
                                 int max_refinements) {
    QuadratureResult out;
    double abs_sum = 0.0;
    int panels = 1;
    double estimate = gauss_panels(f, a, b, panels, abs_sum);
    for (int level = 1; level <= max_refinements; ++level) {
        panels *= 2;
        const double next = gauss_panels(f, a, b, panels, abs_sum);
        const double change = std::abs(next - estimate);
        estimate = next;
        out.refinements = level;
        out.error_estimate = change;
        if (change <= rel_tol * std::max(std::abs(next), 1e-15 * abs_sum)) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    return out;
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec) {
    if (!(spec.rel_tol >= 1e-14 && spec.rel_tol <= 1e-4)) {
        throw ParameterDomainError("integrate: rel_tol must lie in [1e-14, 1e-4]");
    }
    if (spec.max_refinements < 1) {
        throw ParameterDomainError("integrate: max_refinements must be positive");
    }
    if (!(a <= b)) {
        throw RangeError("integrate: requires a <= b");
    }
    if (a == b) {
        QuadratureResult empty;
        empty.converged = true;
        return empty;
    }
    switch (spec.scheme) {
        case QuadratureScheme::GaussLegendreComposite:
            return gauss_composite(f, a, b, spec.rel_tol, spec.max_refinements);
        case QuadratureScheme::DoubleExponential:
            break;
    }
    return tanh_sinh(f, a, b, spec.rel_tol, spec.max_refinements);
}

QuadratureResult integrate_to_infinity(const RealFunction& f, double a, double scale,
                                       double rel_tol, int max_refinements) {
    if (!(scale > 0.0)) throw ParameterDomainError("integrate_to_infinity: scale must be > 0");
    constexpr double span = 4.5;
    auto node = [&](double t, double& abs_sum) {
        const double u = kHalfPi * std::sinh(t);
        const double eu = std::exp(u);
        const double x = a + scale * eu;
        const double w = scale * kHalfPi * std::cosh(t) * eu;
        const double v = f(x);
        if (!std::isfinite(v) || !std::isfinite(w)) return 0.0;
        abs_sum += w * std::abs(v);
        return w * v;
    };
    QuadratureResult out;
    double abs_sum = 0.0;
    double sum = 0.0;
    for (int j = -static_cast<int>(span); j <= static_cast<int>(span); ++j) {
        sum += node(static_cast<double>(j), abs_sum);
    }
    double h = 1.0;
    double estimate = sum;
    for (int level = 1; level <= max_refinements; ++level) {
        h *= 0.5;
        const int n = static_cast<int>(span / h);
        for (int j = -n; j <= n; ++j) {
            if (j % 2 == 0) continue;
            sum += node(j * h, abs_sum);
        }
        const double next = h * sum;
        const double change = std::abs(next - estimate);
        estimate = next;
        out.refinements = level;
        out.error_estimate = change;
        if (level >= 3 && change <= rel_tol * std::max(std::abs(next), 1e-15 * h * abs_sum)) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    return out;
}

ContourResult contour_integral(const ComplexFunction& g, const ContourSpec& contour,
                               double rel_tol, int max_panels) {
    if (!(contour.radius > 0.0)) {
        throw ParameterDomainError("contour_integral: radius must be positive");
    }
    if (contour.panels < 4) {
        throw ParameterDomainError("contour_integral: at least 4 panels required");
    }
    using cd = std::complex<double>;
    const double r = contour.radius;
    auto sample = [&](double theta, double& abs_sum) {
        const cd e = std::polar(1.0, theta);
        const cd v = g(contour.center + r * e) * e;
        abs_sum += std::abs(v);
        return v;
    };
    ContourResult out;
    int n = contour.panels;
    double abs_sum = 0.0;
    cd sum = 0.0;
    for (int j = 0; j < n; ++j) sum += sample(2.0 * kPi * j / n, abs_sum);
    cd estimate = r * sum / static_cast<double>(n);
    int doublings = 0;
    while (2 * n <= max_panels) {
        for (int j = 0; j < n; ++j) sum += sample(2.0 * kPi * (j + 0.5) / n, abs_sum);
        n *= 2;
        ++doublings;
        const cd next = r * sum / static_cast<double>(n);
        const double change = std::abs(next - estimate);
        const double scale = std::max(std::abs(next), 1e-15 * r * abs_sum / n);
        estimate = next;
        out.rel_change = change / std::max(std::abs(next), 1e-300);
        if (doublings >= 2 && change <= rel_tol * scale) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    out.panels = n;
    return out;
}

}  // namespace elastica::specfun
