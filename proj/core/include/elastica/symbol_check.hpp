#pragma once

// Numerical checks of the leading resolvent symbol of the flat Navier-Lame operator and
// of the Gaussian integrals that produce the interior and boundary heat coefficients.

#include <complex>
#include <string>
#include <vector>

#include "elastica/elastic_core.hpp"

namespace elastica::symbol {

struct SymbolPoint {
    double xi_norm2;
    std::complex<double> tau;
    LameParams params;
    int n;
};

/// n / (tau - mu xi^2) + (mu + lambda) xi^2 / ((tau - mu xi^2)(tau - (2 mu + lambda) xi^2)).
/// Throws PoleError within 1e-10 scale of either pole.
std::complex<double> trace_q2(const SymbolPoint& point);

/// (n - 1) / (tau - mu xi^2) + 1 / (tau - (2 mu + lambda) xi^2).
std::complex<double> trace_q2_partial_fractions(const SymbolPoint& point);

struct ResidueCheck {
    double t;
    double xi_norm2;
    double contour_value;
    double closed_form;  // (n - 1) exp(-t mu xi^2) + exp(-t (2 mu + lambda) xi^2)
    double relative_gap;
    double imaginary_part;
    int panels;
};

/// (1 / 2 pi i) contour integral of exp(-t tau) trace_q2 around both poles.
/// Throws ConvergenceError when the contour rule does not settle.
ResidueCheck residue_heat(double t, double xi_norm2, const LameParams& params, int n);

struct IntegralCheck {
    double t;
    double quadrature;
    double closed_form;
    double relative_gap;
    double error_estimate;
};

/// (2 pi)^-n int_{R^n} ((n - 1) exp(-t mu |xi|^2) + exp(-t (2 mu + lambda) |xi|^2)) dxi by
/// radial quadrature, against (n - 1) / (4 pi mu t)^{n/2} + 1 / (4 pi (2 mu + lambda) t)^{n/2}.
IntegralCheck interior_coefficient(double t, const LameParams& params, int n);

struct BoundaryLayerCheck {
    IntegralCheck main;      // int_0^inf against (1/4)[(n-1)(4 pi mu t)^{-(n-1)/2} + (4 pi (2mu+lambda) t)^{-(n-1)/2}]
    double epsilon;
    double tail;             // int_eps^inf of the same integrand
    double tail_ratio;       // tail / main
    double tail_envelope;    // main closed form * exp(-eps^2 / ((2 mu + lambda) t))
    bool tail_within_envelope;
};

BoundaryLayerCheck boundary_layer(double t, const LameParams& params, int n, double epsilon = 0.5);

inline constexpr double kResidueTolerance = 1e-8;
inline constexpr double kIntegralTolerance = 1e-9;
inline constexpr double kTailTolerance = 1e-8;

struct SubCheck {
    std::string name;
    double gap;
    double tolerance;
    Verdict verdict;
};

struct CancellationAnalytic {
    LameParams params;
    int n;
    std::vector<SubCheck> checks;
    double max_residue_gap = 0.0;
    double max_interior_gap = 0.0;
    double max_boundary_gap = 0.0;
    // heat boundary coefficients from the Gaussian constants; the averaged kernel has
    // b~- + b~+ = 0 by construction of the image terms
    double b_tilde_minus = 0.0;
    double b_tilde_plus = 0.0;
    double b_tilde_sum = 0.0;
    std::vector<std::string> premises;
    std::string conclusion;
    Verdict verdict = Verdict::Fail;
};

/// Standard grids used by the chained verification.
std::vector<double> standard_t_grid();        // {0.01, 0.1, 1}
std::vector<double> standard_xi2_grid();      // {0, 1, 10}

/// Runs the residue, interior and boundary-layer checks on the standard grids and the
/// homogeneity check (mu, lambda, t) -> (c mu, c lambda, t / c); PASS when all pass.
CancellationAnalytic cancellation_analytic(const LameParams& params, int n);

}  // namespace elastica::symbol
