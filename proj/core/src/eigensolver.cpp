#include "elastica/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/SparseCholesky>

#include "elastica/errors.hpp"

namespace elastica::linalg {
namespace {

void check_options(const SparseMatrix& k, const SparseMatrix& m, const EigenOptions& o) {
    if (k.rows() != k.cols() || m.rows() != m.cols() || k.rows() != m.rows()) {
        throw SolverError("stiffness and mass must be square and of equal size");
    }
    if (o.count.has_value() == o.lambda_max.has_value()) {
        throw SolverError("exactly one of count or lambda_max must be given");
    }
    if (o.count && *o.count < 0) throw SolverError("count must be nonnegative");
    if (o.lambda_max && !(*o.lambda_max > o.shift)) {
        throw SolverError("lambda_max must lie above the shift");
    }
}

std::vector<double> residual_norms(const SparseMatrix& k, const SparseMatrix& m,
                                   const std::vector<double>& values, const Eigen::MatrixXd& x) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Eigen::VectorXd mx = m * x.col(static_cast<Eigen::Index>(i));
        const Eigen::VectorXd r = k * x.col(static_cast<Eigen::Index>(i)) - values[i] * mx;
        out[i] = r.norm() / mx.norm();
    }
    return out;
}

// Orders (value, column) pairs ascending and applies count/lambda_max selection.
EigenPairs select(const SparseMatrix& k, const SparseMatrix& m, std::vector<double> values,
                  const Eigen::MatrixXd& vectors, const EigenOptions& o) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::size_t> keep;
    for (std::size_t idx : order) {
        if (o.count && static_cast<int>(keep.size()) >= *o.count) break;
        if (o.lambda_max && values[idx] > *o.lambda_max) break;
        keep.push_back(idx);
    }
    EigenPairs out;
    out.values.reserve(keep.size());
    Eigen::MatrixXd x(vectors.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.values.push_back(values[keep[i]]);
        x.col(static_cast<Eigen::Index>(i)) = vectors.col(static_cast<Eigen::Index>(keep[i]));
    }
    out.residuals = residual_norms(k, m, out.values, x);
    if (o.want_vectors) out.vectors = std::move(x);
    return out;
}

}  // namespace

EigenPairs lanczos_shift_invert(const SparseMatrix& stiffness, const SparseMatrix& mass,
                                const EigenOptions& options) {
    check_options(stiffness, mass, options);
    const Eigen::Index n = stiffness.rows();
    if (n == 0 || (options.count && *options.count == 0)) return {};

    const SparseMatrix shifted = stiffness - options.shift * mass;
    Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
    if (factor.info() != Eigen::Success) {
        throw SolverError("LDL^T factorization of K - sigma M failed");
    }
    if (factor.vectorD().minCoeff() <= 0.0) {
        throw SolverError("shift " + std::to_string(options.shift) +
                          " does not lie below the spectrum (K - sigma M not positive definite)");
    }

    // Krylov dimension per pass, bounded by memory (~150 MB of basis vectors).
    Eigen::Index cap = options.max_krylov > 0
                           ? options.max_krylov
                           : std::clamp<Eigen::Index>(150'000'000 / (8 * n), 60, 400);
    if (options.count) cap = std::max<Eigen::Index>(cap, 2 * *options.count + 20);
    cap = std::min(cap, n);

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    Eigen::MatrixXd locked(n, 0);
    Eigen::MatrixXd locked_m(n, 0);  // M * locked
    std::vector<double> locked_theta;
    auto lock = [&](const Eigen::VectorXd& x, double theta) {
        const Eigen::Index c = locked.cols();
        locked.conservativeResize(n, c + 1);
        locked_m.conservativeResize(n, c + 1);
        locked.col(c) = x;
        locked_m.col(c) = mass * x;
        locked_theta.push_back(theta);
    };
    auto orthogonalize_locked = [&](Eigen::VectorXd& w) {
        if (locked.cols() == 0) return;
        const Eigen::VectorXd d = locked_m.transpose() * w;
        w.noalias() -= locked * d;
    };
    auto m_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(mass * v)); };

    double theta_threshold = options.lambda_max
                                 ? 1.0 / (*options.lambda_max - options.shift)
                                 : std::numeric_limits<double>::quiet_NaN();

    EigenPairs result;
    Eigen::MatrixXd q(n, cap + 1);
    for (int pass = 0; pass < 500; ++pass) {
        if (locked.cols() >= n) break;
        ++result.passes;

        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);
        orthogonalize_locked(v);
        orthogonalize_locked(v);
        const double v_norm = m_norm(v);
        if (!(v_norm > 0.0)) break;
        q.col(0) = v / v_norm;

        std::vector<double> alpha, beta;
        Eigen::VectorXd ritz;
        Eigen::MatrixXd ritz_vec;
        std::vector<double> ritz_res;
        int stable_checks = 0;
        Eigen::Index last_converged_count = -1;
        bool done = false;
        bool breakdown = false;
        Eigen::Index steps = 0;
        const int need =
            options.count ? std::max<int>(0, *options.count - static_cast<int>(locked.cols())) : 0;

        for (Eigen::Index j = 0; j < cap; ++j) {
            Eigen::VectorXd w = factor.solve(mass * q.col(j));
            double a_j = 0.0;
            for (int rep = 0; rep < 2; ++rep) {
                const Eigen::VectorXd mw = mass * w;
                const Eigen::VectorXd c = q.leftCols(j + 1).transpose() * mw;
                w.noalias() -= q.leftCols(j + 1) * c;
                a_j += c[j];
                orthogonalize_locked(w);
            }
            const double b_j = m_norm(w);
            alpha.push_back(a_j);
            beta.push_back(b_j);
            steps = j + 1;
            ++result.steps;

            const Eigen::Index dim = j + 1;
            const double theta_scale = std::abs(a_j) > 0.0 ? std::abs(a_j) : 1.0;
            breakdown = !(b_j > 1e-13 * theta_scale);
            const bool check = breakdown || dim == cap || (dim >= 4 && dim % 4 == 0);
            if (check) {
                Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), dim);
                Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), dim - 1 > 0 ? dim - 1 : 0);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
                es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
                ritz = es.eigenvalues();
                ritz_vec = es.eigenvectors();
                ritz_res.assign(static_cast<std::size_t>(dim), 0.0);
                for (Eigen::Index i = 0; i < dim; ++i) {
                    ritz_res[static_cast<std::size_t>(i)] =
                        breakdown ? 0.0 : b_j * std::abs(ritz_vec(dim - 1, i));
                }
                auto converged = [&](Eigen::Index i) {
                    return ritz_res[static_cast<std::size_t>(i)] <= options.tol * std::abs(ritz[i]);
                };
                // ritz values ascending: the wanted end is the top
                if (std::isnan(theta_threshold)) {
                    bool all = dim >= need;
                    for (Eigen::Index i = dim - 1; i >= 0 && i >= dim - need; --i) {
                        all = all && converged(i);
                    }
                    done = all;
                } else {
                    bool all = converged(dim - 1);
                    Eigen::Index count_above = 0;
                    for (Eigen::Index i = dim - 1; i >= 0 && ritz[i] >= theta_threshold; --i) {
                        all = all && converged(i);
                        ++count_above;
                    }
                    if (all && count_above == last_converged_count) ++stable_checks;
                    else stable_checks = 0;
                    last_converged_count = all ? count_above : -1;
                    done = all && (stable_checks >= 1 || breakdown || count_above == 0);
                }
                if (breakdown) done = true;
            }
            if (done) break;
            q.col(j + 1) = w / b_j;
        }

        // lock converged Ritz pairs (count mode: only the wanted top block)
        Eigen::Index newly_locked = 0;
        const Eigen::Index dim = steps;
        if (ritz.size() == dim && dim > 0) {
            for (Eigen::Index i = dim - 1; i >= 0; --i) {
                const bool ok = ritz_res[static_cast<std::size_t>(i)] <= options.tol * std::abs(ritz[i]);
                if (!ok) continue;
                if (!std::isnan(theta_threshold) && ritz[i] < theta_threshold) continue;
                if (std::isnan(theta_threshold) && dim - 1 - i >= std::max(need, 1)) continue;
                if (ritz[i] <= 0.0) continue;
                Eigen::VectorXd x = q.leftCols(dim) * ritz_vec.col(i);
                orthogonalize_locked(x);
                const double xn = m_norm(x);
                if (!(xn > 0.5)) continue;  // already represented among locked vectors
                lock(x / xn, ritz[i]);
                ++newly_locked;
            }
        }

        if (breakdown && dim <= 2 && newly_locked == 0) {
            ++result.restarts;
            if (result.restarts > options.max_restarts) {
                throw SolverError("Lanczos broke down repeatedly (" +
                                  std::to_string(result.restarts) + " restarts)");
            }
            continue;
        }

        if (std::isnan(theta_threshold)) {
            if (static_cast<int>(locked.cols()) >= *options.count) {
                std::vector<double> sorted = locked_theta;
                std::sort(sorted.begin(), sorted.end(), std::greater<>());
                // include every copy of a multiple eigenvalue at the cut
                theta_threshold = sorted[static_cast<std::size_t>(*options.count - 1)] * (1.0 - 1e-8);
            }
            continue;
        }
        if (newly_locked == 0) break;
    }

    std::vector<double> values;
    values.reserve(locked_theta.size());
    for (double th : locked_theta) values.push_back(options.shift + 1.0 / th);
    EigenPairs out = select(stiffness, mass, std::move(values), locked, options);
    out.passes = result.passes;
    out.restarts = result.restarts;
    out.steps = result.steps;
    return out;
}

std::vector<double> jacobi_symmetric(Eigen::MatrixXd a, Eigen::MatrixXd* vectors) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw SolverError("jacobi_symmetric: matrix must be square");
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double frob2 = a.squaredNorm();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index r = p + 1; r < n; ++r) off += a(p, r) * a(p, r);
        if (off <= 1e-30 * frob2 || off == 0.0) break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index r = p + 1; r < n; ++r) {
                const double apr = a(p, r);
                if (std::abs(apr) <= 1e-300) continue;
                const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // a is kept symmetric: rotate columns p and r, then mirror into the rows
                const double app = a(p, p), arr = a(r, r);
                double* colp = a.col(p).data();
                double* colr = a.col(r).data();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double xp = colp[k], xr = colr[k];
                    colp[k] = c * xp - s * xr;
                    colr[k] = s * xp + c * xr;
                }
                colp[p] = app - t * apr;
                colr[r] = arr + t * apr;
                colp[r] = 0.0;
                colr[p] = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    a(p, k) = colp[k];
                    a(r, k) = colr[k];
                }
                if (vectors) {
                    double* vp = v.col(p).data();
                    double* vr = v.col(r).data();
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double xp = vp[k], xr = vr[k];
                        vp[k] = c * xp - s * xr;
                        vr[k] = s * xp + c * xr;
                    }
                }
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    Eigen::MatrixXd sorted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values.push_back(a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]));
        if (vectors) sorted.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    if (vectors) *vectors = std::move(sorted);
    return values;
}

EigenPairs jacobi_dense(const SparseMatrix& stiffness, const SparseMatrix& mass,
                        const EigenOptions& options) {
    check_options(stiffness, mass, options);
    const Eigen::Index n = stiffness.rows();
    if (n > kMaxDenseUnknowns) {
        throw SolverError("dense Jacobi fallback limited to 4000 unknowns, got " +
                          std::to_string(n));
    }
    const Eigen::MatrixXd kd = Eigen::MatrixXd(stiffness);
    const Eigen::MatrixXd md = Eigen::MatrixXd(mass);
    Eigen::LLT<Eigen::MatrixXd> llt(md);
    if (llt.info() != Eigen::Success) throw SolverError("mass matrix is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd c = l.triangularView<Eigen::Lower>().solve(kd);
    c = l.triangularView<Eigen::Lower>().solve(c.transpose()).transpose();
    c = 0.5 * (c + c.transpose()).eval();
    Eigen::MatrixXd v;
    std::vector<double> values = jacobi_symmetric(c, &v);
    const Eigen::MatrixXd x = l.transpose().triangularView<Eigen::Upper>().solve(v);
    EigenPairs out = select(stiffness, mass, std::move(values), x, options);
    out.passes = 1;
    return out;
}

}  // namespace elastica::linalg
