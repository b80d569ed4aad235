#include "elastica/fem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "elastica/errors.hpp"
#include "elastica/parallel.hpp"
#include "elastica/specfun.hpp"

namespace elastica::fem {
namespace {

using specfun::bessel_zeros_below;
using specfun::kMaxBesselOrder;
using Mat6 = std::array<std::array<double, 6>, 6>;

struct ElementMatrices {
    Mat6 k;
    Mat6 m;
};

ElementMatrices element_matrices(const Mesh& mesh, const std::array<int, 3>& tri, double mu,
                                 double lambda) {
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double two_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double area = 0.5 * two_area;
    // gradients of the barycentric coordinates
    const std::array<double, 3> b{(p1[1] - p2[1]) / two_area, (p2[1] - p0[1]) / two_area,
                                  (p0[1] - p1[1]) / two_area};
    const std::array<double, 3> c{(p2[0] - p1[0]) / two_area, (p0[0] - p2[0]) / two_area,
                                  (p1[0] - p0[0]) / two_area};
    // strain rows (exx, eyy, gxy) for the 6 local dofs
    double bm[3][6] = {};
    for (int i = 0; i < 3; ++i) {
        bm[0][2 * i] = b[i];
        bm[1][2 * i + 1] = c[i];
        bm[2][2 * i] = c[i];
        bm[2][2 * i + 1] = b[i];
    }
    const double d[3][3] = {{lambda + 2 * mu, lambda, 0.0}, {lambda, lambda + 2 * mu, 0.0}, {0.0, 0.0, mu}};
    ElementMatrices e{};
    for (int r = 0; r < 6; ++r) {
        double db[3];
        for (int s = 0; s < 3; ++s) db[s] = d[s][0] * bm[0][r] + d[s][1] * bm[1][r] + d[s][2] * bm[2][r];
        for (int q = r; q < 6; ++q) {
            const double v = area * (db[0] * bm[0][q] + db[1] * bm[1][q] + db[2] * bm[2][q]);
            e.k[r][q] = v;
            e.k[q][r] = v;
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double v = area / 12.0 * (i == j ? 2.0 : 1.0);
            e.m[2 * i][2 * j] = v;
            e.m[2 * i + 1][2 * j + 1] = v;
        }
    }
    return e;
}

void check_options(const SolveOptions& o) {
    if (o.count.has_value() == o.lambda_max.has_value()) {
        throw SolverError("exactly one of count or lambda_max must be given");
    }
    if (o.count && *o.count < 1) throw SolverError("count must be positive");
    if (o.lambda_max && !(*o.lambda_max > 0.0)) throw SolverError("lambda_max must be positive");
}

constexpr double kPi = std::numbers::pi;

}  // namespace

Operators assemble(const Mesh& mesh, const LameParams& params, BoundaryCondition bc) {
    check_mesh(mesh);
    const int nv = static_cast<int>(mesh.vertices.size());
    std::vector<int> dof_map(2 * static_cast<std::size_t>(nv), -1);
    int next = 0;
    for (int v = 0; v < nv; ++v) {
        if (bc == BoundaryCondition::Dirichlet && mesh.boundary[v]) continue;
        dof_map[2 * v] = next++;
        dof_map[2 * v + 1] = next++;
    }

    std::vector<ElementMatrices> elems(mesh.triangles.size());
    parallel_for(mesh.triangles.size(), [&](std::size_t e) {
        elems[e] = element_matrices(mesh, mesh.triangles[e], params.mu(), params.lambda());
    });

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(elems.size() * 36);
    mt.reserve(elems.size() * 20);
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const auto& tri = mesh.triangles[e];
        int gl[6];
        for (int i = 0; i < 3; ++i) {
            gl[2 * i] = dof_map[2 * tri[i]];
            gl[2 * i + 1] = dof_map[2 * tri[i] + 1];
        }
        for (int r = 0; r < 6; ++r) {
            if (gl[r] < 0) continue;
            for (int q = 0; q < 6; ++q) {
                if (gl[q] < 0) continue;
                kt.emplace_back(gl[r], gl[q], elems[e].k[r][q]);
                if (elems[e].m[r][q] != 0.0) mt.emplace_back(gl[r], gl[q], elems[e].m[r][q]);
            }
        }
    }
    Operators ops{SparseMatrix(next, next), SparseMatrix(next, next), std::move(dof_map),
                  mesh.domain, params, bc, mesh.h};
    ops.stiffness.setFromTriplets(kt.begin(), kt.end());
    ops.mass.setFromTriplets(mt.begin(), mt.end());
    ops.stiffness.makeCompressed();
    ops.mass.makeCompressed();
    return ops;
}

double max_asymmetry(const SparseMatrix& a) {
    const SparseMatrix t = a.transpose();
    const SparseMatrix d = a - t;
    double worst = 0.0;
    for (int col = 0; col < d.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(d, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

double trust_threshold(double h) { return (0.5 / h) * (0.5 / h); }

SolveResult solve_eigs(const Operators& ops, const SolveOptions& options) {
    check_options(options);
    const double mu = ops.params.mu();
    const double trust = trust_threshold(ops.h);
    bool truncated = false;

    linalg::EigenOptions eo;
    eo.shift = ops.bc == BoundaryCondition::Free ? -0.5 * mu : 0.0;
    eo.want_vectors = options.want_vectors;
    double lm = 0.0;
    if (options.count) {
        eo.count = *options.count;
    } else {
        lm = *options.lambda_max;
        if (options.apply_trust_threshold && lm > trust) {
            lm = trust;
            truncated = true;
        }
        eo.lambda_max = lm;
    }

    linalg::EigenPairs pairs = options.backend == EigenBackend::Jacobi
                                   ? linalg::jacobi_dense(ops.stiffness, ops.mass, eo)
                                   : linalg::lanczos_shift_invert(ops.stiffness, ops.mass, eo);

    std::vector<double> values, residuals;
    double max_res = 0.0;
    for (std::size_t i = 0; i < pairs.values.size(); ++i) {
        double v = pairs.values[i];
        const double res = pairs.residuals[i];
        if (!(res <= kResidualTolerance * std::max(1.0, std::abs(v)))) {
            throw SolverError("eigenpair residual " + format_double(res) + " at L=" + format_double(v) +
                              " exceeds tolerance");
        }
        if (std::abs(v) <= 1e-8 * mu) v = 0.0;
        if (options.count && options.apply_trust_threshold && v > trust) {
            truncated = true;
            break;
        }
        values.push_back(v);
        residuals.push_back(res);
        max_res = std::max(max_res, res);
    }

    double spec_max = lm;
    if (options.count) {
        spec_max = (truncated || values.empty()) ? trust : values.back();
    }
    std::vector<SpectrumEntry> raw;
    raw.reserve(values.size());
    for (double v : values) raw.push_back({v, 1, "fem"});
    Spectrum spectrum{ops.domain, ops.bc, ops.params, spec_max, SpectrumMethod::FEM,
                      merge_multiplicities(std::move(raw), kDefaultMergeTolerance, mu), {}};
    spectrum.metadata["h"] = format_double(ops.h);
    spectrum.metadata["unknowns"] = std::to_string(ops.unknowns());
    spectrum.metadata["max_residual"] = format_double(max_res);
    spectrum.metadata["trust_limit"] = format_double(trust);
    spectrum.metadata["solver"] = options.backend == EigenBackend::Jacobi ? "jacobi" : "lanczos";

    Eigen::MatrixXd vectors;
    if (options.want_vectors) vectors = pairs.vectors.leftCols(static_cast<Eigen::Index>(values.size()));
    return SolveResult{std::move(spectrum), std::move(values), std::move(residuals), std::move(vectors),
                       max_res,           trust,             truncated,            pairs.passes,
                       pairs.restarts};
}

SolveResult fem_spectrum(Domain domain, const LameParams& params, BoundaryCondition bc, double h,
                         const SolveOptions& options) {
    const Mesh mesh = make_mesh(domain, h);
    return solve_eigs(assemble(mesh, params, bc), options);
}

double richardson(double coarse, double fine, double ratio) {
    return fine + (fine - coarse) / (ratio * ratio - 1.0);
}

double observed_order(double coarse, double medium, double fine, double ratio) {
    const double d1 = coarse - medium;
    const double d2 = medium - fine;
    if (d1 == 0.0 || d2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(std::abs(d1) / std::abs(d2)) / std::log(ratio);
}

RefinementReport refine_and_extrapolate(Domain domain, const LameParams& params,
                                        BoundaryCondition bc, const std::vector<double>& h_list,
                                        int count) {
    if (h_list.size() < 3) throw ParameterDomainError("refinement needs at least three mesh sizes");
    if (count < 1) throw ParameterDomainError("count must be positive");
    const double ratio = h_list[0] / h_list[1];
    if (!(ratio > 1.0)) throw ParameterDomainError("mesh sizes must decrease");
    for (std::size_t i = 1; i + 1 < h_list.size(); ++i) {
        if (std::abs(h_list[i] / h_list[i + 1] - ratio) > 1e-6 * ratio) {
            throw ParameterDomainError("mesh sizes must form a geometric progression");
        }
    }
    RefinementReport rep{h_list, ratio, {}, 0};
    std::vector<std::vector<double>> levels;
    SolveOptions so;
    so.count = count;
    so.apply_trust_threshold = false;
    for (double h : h_list) levels.push_back(fem_spectrum(domain, params, bc, h, so).values);

    const std::size_t nl = levels.size();
    for (int i = 0; i < count; ++i) {
        ExtrapolatedEigenvalue ev{};
        for (const auto& lv : levels) ev.sequence.push_back(lv.at(static_cast<std::size_t>(i)));
        const double c = levels[nl - 3][i], m = levels[nl - 2][i], f = levels[nl - 1][i];
        if (f == 0.0 && m == 0.0) {
            ev.extrapolated = 0.0;
            ev.observed_order = std::numeric_limits<double>::quiet_NaN();
            ev.flagged = false;
        } else {
            ev.extrapolated = richardson(m, f, ratio);
            ev.observed_order = observed_order(c, m, f, ratio);
            ev.flagged = (c - m) * (m - f) < 0.0;
        }
        if (ev.flagged) ++rep.flagged_count;
        rep.eigenvalues.push_back(std::move(ev));
    }
    return rep;
}

Spectrum analytic_decoupled_spectrum(Domain domain, double mu, double lambda_max,
                                     BoundaryCondition bc) {
    const LameParams params(mu, -mu);
    if (!(lambda_max > 0.0)) throw ParameterDomainError("lambda_max must be positive");
    Spectrum s{DomainGeometry::of(domain), bc, params, lambda_max, SpectrumMethod::AnalyticDecoupled, {}, {}};
    if (domain == Domain::UnitSquare) {
        const int start = bc == BoundaryCondition::Dirichlet ? 1 : 0;
        const double unit = mu * kPi * kPi;
        const auto n_max = static_cast<long long>(std::floor(lambda_max / unit));
        std::map<long long, int> lattice;
        for (long long p = start; p * p <= n_max; ++p) {
            for (long long q = start; p * p + q * q <= n_max; ++q) lattice[p * p + q * q] += 1;
        }
        for (const auto& [n, pairs] : lattice) {
            const double v = unit * static_cast<double>(n);
            if (v > lambda_max) continue;
            s.entries.push_back({v, 2 * pairs, "lattice"});
        }
        s.metadata["generator"] = bc == BoundaryCondition::Dirichlet ? "dirichlet-lattice" : "neumann-lattice";
        return s;
    }
    if (bc != BoundaryCondition::Dirichlet) {
        throw ParameterDomainError("analytic decoupled spectrum on the disk is available for Dirichlet only");
    }
    const double x_max = std::sqrt(lambda_max / mu);
    std::vector<SpectrumEntry> raw;
    for (int k = 0;; ++k) {
        if (k > kMaxBesselOrder) {
            throw RangeError("lambda_max too large for the analytic disk spectrum (Bessel order > " +
                             std::to_string(kMaxBesselOrder) + ")");
        }
        const auto zeros = bessel_zeros_below(k, x_max);
        if (zeros.empty()) break;
        for (double j : zeros) raw.push_back({mu * j * j, k == 0 ? 2 : 4, "k=" + std::to_string(k)});
    }
    s.entries = merge_multiplicities(std::move(raw), 1e-12, mu);
    s.metadata["generator"] = "bessel-zeros";
    return s;
}

}  // namespace elastica::fem
