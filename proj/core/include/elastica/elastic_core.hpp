#pragma once

// Material parameters, model geometries, and closed-form coefficients of the two-term
// counting-function and heat-trace expansions for the Navier-Lame operator.

#include <string>
#include <string_view>

namespace elastica {

/// Lame parameters (mu, lambda). Admissible when mu > 0 and mu + lambda >= 0.
/// alpha = mu / (lambda + 2 mu) is always derived, never stored.
class LameParams {
public:
    LameParams(double mu, double lambda);

    double mu() const noexcept { return mu_; }
    double lambda() const noexcept { return lambda_; }
    double alpha() const noexcept { return mu_ / (lambda_ + 2.0 * mu_); }
    /// Squared compressional speed lambda + 2 mu.
    double p_modulus() const noexcept { return lambda_ + 2.0 * mu_; }
    /// True when lambda + mu == 0, i.e. both wave speeds coincide.
    bool decoupled() const noexcept { return lambda_ + mu_ == 0.0; }

    friend bool operator==(const LameParams&, const LameParams&) = default;

private:
    double mu_;
    double lambda_;
};

enum class BoundaryCondition { Dirichlet, Free };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view s);

enum class Domain { UnitDisk, UnitSquare };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view s);

struct DomainGeometry {
    Domain name;
    double volume;           // area of the domain
    double boundary_length;  // perimeter
    int dimension = 2;

    static DomainGeometry of(Domain d);
    friend bool operator==(const DomainGeometry&, const DomainGeometry&) = default;
};

enum class Theory { CFLV, Liu };

std::string_view to_string(Theory t);

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 10;

// ---------------------------------------------------------------------------
// Rayleigh cubic R_a(w) = w^3 - 8 w^2 + 8 (3 - 2a) w + 16 (a - 1)

double rayleigh_polynomial(double alpha, double w);

struct RayleighRoot {
    double alpha;
    double w1;
    double gamma_r;
    double residual;
};

/// Root of the Rayleigh cubic in [0, 1) for alpha in (0, 1]: bisection on the certified
/// bracket followed by a Newton polish. alpha == 1 gives w1 = 0 exactly.
RayleighRoot rayleigh_root(double alpha);

// ---------------------------------------------------------------------------
// Coefficients

/// Leading Weyl coefficient a in N(L) ~ a Vol L^{n/2}.
double weyl_a(const LameParams& params, int n);

/// Boundary coefficient b of the counting function as stated with the arctan integral
/// and the Rayleigh term. Throws SingularLimitError for the free boundary at alpha == 1.
double b_cflv(const LameParams& params, int n, BoundaryCondition bc);

/// Boundary coefficient obtained by dividing the heat-trace coefficient by
/// Gamma(1 + (n-1)/2). Antisymmetric in the boundary condition.
double b_liu(const LameParams& params, int n, BoundaryCondition bc);

/// The integral term inside b_cflv, i.e. the arctan integral over [sqrt(alpha), 1].
double cflv_integral(double alpha, int n, BoundaryCondition bc);

struct WeylTwoTerm {
    Theory theory;
    int n;
    double a;
    double b_minus;  // Dirichlet
    double b_plus;   // Free
};

struct HeatTwoTerm {
    int n;
    double a_tilde;
    double b_tilde_minus;
    double b_tilde_plus;
};

WeylTwoTerm weyl_two_term(const LameParams& params, int n, Theory theory);

/// a~ = Gamma(1 + n/2) a, b~ = Gamma(1 + (n-1)/2) b.
HeatTwoTerm to_heat_coeffs(const WeylTwoTerm& w);

/// Heat-trace coefficients evaluated directly from the small-time expansion
/// (interior and boundary Gaussian constants), independent of any Weyl coefficient.
HeatTwoTerm heat_coeffs_direct(const LameParams& params, int n);

enum class Verdict { Pass, Fail };
std::string_view to_string(Verdict v);

struct SumTestResult {
    Theory theory;
    double b_minus;
    double b_plus;
    double sum;
    Verdict verdict;
};

/// b- + b+ with PASS iff |sum| <= 1e-12 max(|b-|, |b+|).
SumTestResult sum_test(const LameParams& params, int n, Theory theory);

/// Throws ParameterDomainError unless kMinDimension <= n <= kMaxDimension.
void check_dimension(int n);

}  // namespace elastica
