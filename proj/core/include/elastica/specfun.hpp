#pragma once

// Special functions and one-dimensional numeric kernels used throughout the library.
// Everything here is a pure function of its arguments.

#include <complex>
#include <functional>
#include <vector>

namespace elastica::specfun {

inline constexpr int kMaxBesselOrder = 200;
inline constexpr double kMaxBesselArgument = 1e6;

/// Bessel function of the first kind J_k(x), integer order 0 <= k <= 200, 0 <= x <= 1e6.
/// Throws RangeError outside that box.
double bessel_j(int k, double x);

/// J_k'(x) from J_k' = (J_{k-1} - J_{k+1}) / 2, with J_0' = -J_1.
double bessel_j_prime(int k, double x);

/// J_{k-1}(x), J_k(x), J_{k+1}(x) from one recurrence sweep. For k = 0 the first slot
/// holds J_{-1} = -J_1.
struct BesselTriple {
    double prev;
    double value;
    double next;
    double derivative() const { return 0.5 * (prev - next); }
};
BesselTriple bessel_j_triple(int k, double x);

/// First `count` positive zeros of J_k in ascending order. count <= 10^4.
std::vector<double> bessel_zeros(int k, int count);

/// All positive zeros of J_k strictly below x_max.
std::vector<double> bessel_zeros_below(int k, double x_max);

/// Gamma function for 0 < x <= 50. Half-integers use the exact recurrence from
/// Gamma(1/2) = sqrt(pi); other arguments use a Lanczos approximation.
double gamma_fn(double x);

// ---------------------------------------------------------------------------
// Quadrature

enum class QuadratureScheme { GaussLegendreComposite, DoubleExponential };

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::DoubleExponential;
    double rel_tol = 1e-12;
    int max_refinements = 12;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int refinements = 0;
    bool converged = false;
};

using RealFunction = std::function<double(double)>;

/// Integral of f over [a, b]. Integrands may have singular derivatives at the endpoints
/// (DoubleExponential never evaluates f exactly at a or b). When the tolerance is not met
/// within spec.max_refinements the result comes back with converged == false.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Integral of f over [a, +inf) by the exp-sinh transform x = a + scale * exp(pi/2 sinh t).
/// `scale` should be comparable to the decay length of f.
QuadratureResult integrate_to_infinity(const RealFunction& f, double a, double scale = 1.0,
                                       double rel_tol = 1e-12, int max_refinements = 12);

// ---------------------------------------------------------------------------
// Root finding

/// Root of f in [lo, hi] with f(lo) * f(hi) < 0, to absolute bracket width `tol`.
/// Illinois-accelerated false position with a bisection fallback. Throws BracketError
/// when there is no sign change.
double find_root(const RealFunction& f, double lo, double hi, double tol = 1e-14);

/// Safeguarded Newton: steps leaving the current bracket are replaced by bisection.
double find_root_newton(const RealFunction& f, const RealFunction& df, double lo, double hi,
                        double tol = 1e-14);

// ---------------------------------------------------------------------------
// Contour quadrature

/// Counter-clockwise circle in the complex plane.
struct ContourSpec {
    double center = 0.0;
    double radius = 1.0;
    int panels = 16;
};

struct ContourResult {
    std::complex<double> value;
    double rel_change = 0.0;
    int panels = 0;
    bool converged = false;
};

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

/// (1 / 2 pi i) times the contour integral of g over the circle. Trapezoidal rule in the
/// angle; panels are doubled until two successive values agree to rel_tol.
ContourResult contour_integral(const ComplexFunction& g, const ContourSpec& contour,
                               double rel_tol = 1e-10, int max_panels = 1 << 16);

}  // namespace elastica::specfun
