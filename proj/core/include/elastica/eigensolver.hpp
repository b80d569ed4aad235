#pragma once

// Generalized symmetric eigensolvers for K x = L M x with K symmetric positive
// semi-definite and M symmetric positive definite.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace elastica::linalg {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenOptions {
    // Exactly one of these selects the wanted part of the spectrum.
    std::optional<int> count;          // smallest `count` eigenvalues (with multiplicity)
    std::optional<double> lambda_max;  // every eigenvalue <= lambda_max
    double shift = 0.0;                // shift-invert pole; must lie below the spectrum
    double tol = 1e-11;                // Ritz residual tolerance relative to the Ritz value
    int max_krylov = 0;                // per-pass Krylov dimension cap (0: automatic)
    std::uint64_t seed = 0x5eed'e1a5'71cau;
    int max_restarts = 5;
    bool want_vectors = true;
};

struct EigenPairs {
    std::vector<double> values;  // ascending
    Eigen::MatrixXd vectors;     // columns match values (empty when not requested)
    std::vector<double> residuals;  // ||K x - L M x|| / ||M x||
    int passes = 0;
    int restarts = 0;
    int steps = 0;
};

/// Shift-invert Lanczos with full M-orthogonal reorthogonalization. Converged Ritz pairs
/// are locked and the iteration restarts from a fresh start vector orthogonal to them,
/// which recovers every copy of a multiple eigenvalue. Breakdown before any convergence
/// restarts with the next seed of a deterministic sequence; after max_restarts such
/// failures a SolverError is thrown.
EigenPairs lanczos_shift_invert(const SparseMatrix& stiffness, const SparseMatrix& mass,
                                const EigenOptions& options);

inline constexpr int kMaxDenseUnknowns = 4000;

/// Dense fallback: Cholesky reduction M = L L^T followed by cyclic Jacobi on
/// L^-1 K L^-T. Limited to kMaxDenseUnknowns unknowns.
EigenPairs jacobi_dense(const SparseMatrix& stiffness, const SparseMatrix& mass,
                        const EigenOptions& options);

/// Cyclic Jacobi eigen-decomposition of a dense symmetric matrix. Returns eigenvalues
/// ascending; eigenvectors in the columns of `vectors` when non-null.
std::vector<double> jacobi_symmetric(Eigen::MatrixXd a, Eigen::MatrixXd* vectors = nullptr);

}  // namespace elastica::linalg
