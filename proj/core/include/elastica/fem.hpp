#pragma once

// Piecewise-linear vector finite elements for the flat Navier-Lame eigenproblem
//   a(u, v) = int 2 mu eps(u):eps(v) + lambda div u div v,   m(u, v) = int u . v

#include <optional>
#include <string>
#include <vector>

#include "elastica/eigensolver.hpp"
#include "elastica/mesh.hpp"
#include "elastica/spectrum.hpp"

namespace elastica::fem {

using linalg::SparseMatrix;

struct Operators {
    SparseMatrix stiffness;
    SparseMatrix mass;
    // global dof 2 v + c  ->  reduced index, or -1 when eliminated by a Dirichlet condition
    std::vector<int> dof_map;
    DomainGeometry domain;
    LameParams params;
    BoundaryCondition bc;
    double h;

    int unknowns() const { return static_cast<int>(stiffness.rows()); }
};

/// Assembles stiffness and consistent mass. Element matrices are computed in parallel and
/// summed in element order, so the result is bitwise reproducible and exactly symmetric.
Operators assemble(const Mesh& mesh, const LameParams& params, BoundaryCondition bc);

/// Largest |A_ij - A_ji|.
double max_asymmetry(const SparseMatrix& a);

/// Eigenvalues L with sqrt(L) h <= 0.5 are considered resolved by the mesh.
double trust_threshold(double h);

enum class EigenBackend { Auto, Lanczos, Jacobi };

struct SolveOptions {
    std::optional<int> count;
    std::optional<double> lambda_max;
    EigenBackend backend = EigenBackend::Auto;  // Auto: Lanczos
    bool apply_trust_threshold = true;
    bool want_vectors = false;
};

struct SolveResult {
    Spectrum spectrum;
    std::vector<double> values;     // ascending, with multiplicity (zeros clamped)
    std::vector<double> residuals;  // ||K x - L M x|| / ||M x|| per value
    Eigen::MatrixXd vectors;        // reduced dofs, when requested
    double max_residual = 0.0;
    double trust_limit = 0.0;
    bool truncated_by_trust = false;
    int passes = 0;
    int restarts = 0;
};

/// Residual acceptance: ||K x - L M x|| / ||M x|| <= kResidualTolerance max(1, L).
inline constexpr double kResidualTolerance = 1e-8;

/// Solves K x = L M x for the smallest `count` eigenvalues or all eigenvalues up to
/// `lambda_max`. Throws SolverError when an a-posteriori residual exceeds the tolerance.
SolveResult solve_eigs(const Operators& ops, const SolveOptions& options);

/// Mesh, assemble and solve in one call.
SolveResult fem_spectrum(Domain domain, const LameParams& params, BoundaryCondition bc, double h,
                         const SolveOptions& options);

struct ExtrapolatedEigenvalue {
    std::vector<double> sequence;  // values on each mesh, coarse to fine
    double extrapolated;
    double observed_order;  // NaN when undefined (zero eigenvalue or stalled differences)
    bool flagged;           // non-monotone convergence
};

struct RefinementReport {
    std::vector<double> h_list;
    double ratio;
    std::vector<ExtrapolatedEigenvalue> eigenvalues;
    int flagged_count = 0;
};

/// Solves on every mesh size (>= 3, geometric progression) for the smallest `count`
/// eigenvalues and applies second-order Richardson extrapolation to the last two levels;
/// the observed order comes from the last three.
RefinementReport refine_and_extrapolate(Domain domain, const LameParams& params,
                                        BoundaryCondition bc, const std::vector<double>& h_list,
                                        int count);

/// Richardson step for a second-order method: fine + (fine - coarse) / (ratio^2 - 1).
double richardson(double coarse, double fine, double ratio);

/// log(|c - m| / |m - f|) / log(ratio); NaN when a difference vanishes.
double observed_order(double coarse, double medium, double fine, double ratio);

/// Exact spectrum when lambda == -mu (two copies of the scalar Laplacian):
///   square Dirichlet  mu pi^2 (p^2 + q^2), p, q >= 1
///   square Free       mu pi^2 (p^2 + q^2), p, q >= 0 (scalar Neumann lattice)
///   disk Dirichlet    mu j_{k,m}^2, multiplicity 2 (k = 0) or 4 (k >= 1)
/// Throws ParameterDomainError for other combinations.
Spectrum analytic_decoupled_spectrum(Domain domain, double mu, double lambda_max,
                                     BoundaryCondition bc = BoundaryCondition::Dirichlet);

}  // namespace elastica::fem
