#include "elastica/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "elastica/errors.hpp"
#include "elastica/specfun.hpp"

namespace elastica::asymptotics {
namespace {

double geometry_a(const Spectrum& s) { return weyl_a(s.params, s.domain.dimension); }

void check_positive_window(double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw RangeError(std::string(what) + " window must satisfy 0 < lo < hi");
    }
}

double theory_b(const LameParams& p, int n, BoundaryCondition bc, Theory th) {
    return th == Theory::Liu ? b_liu(p, n, bc) : b_cflv(p, n, bc);
}

}  // namespace

long long count_below(const Spectrum& spectrum, double lambda) {
    long long n = 0;
    for (const auto& e : spectrum.entries) {
        if (!(e.eigenvalue < lambda)) break;
        n += e.multiplicity;
    }
    return n;
}

CountingSeries counting(const Spectrum& spectrum, const std::vector<double>& grid) {
    CountingSeries out{spectrum, grid, {}};
    out.values.reserve(grid.size());
    // running pointer: grid need not be sorted, so fall back to a scan when it decreases
    std::size_t idx = 0;
    long long acc = 0;
    double prev = -std::numeric_limits<double>::infinity();
    for (double g : grid) {
        if (!(g > 0.0) || g > spectrum.lambda_max) {
            throw RangeError("counting grid point " + format_double(g) + " outside (0, lambda_max=" +
                             format_double(spectrum.lambda_max) + "]");
        }
        if (g < prev) {
            idx = 0;
            acc = 0;
        }
        while (idx < spectrum.entries.size() && spectrum.entries[idx].eigenvalue < g) {
            acc += spectrum.entries[idx].multiplicity;
            ++idx;
        }
        out.values.push_back(acc);
        prev = g;
    }
    return out;
}

double cesaro_mean(const Spectrum& spectrum, double a, const DomainGeometry& geometry, double lambda) {
    if (!(lambda > 0.0)) throw RangeError("Cesaro mean needs lambda > 0");
    const double s = geometry.boundary_length;
    const double root = std::sqrt(lambda);
    // int_0^L N(x) / (S sqrt x) dx = (2 / S) sum_{tau < L} mult (sqrt L - sqrt tau)
    double step_part = 0.0;
    for (const auto& e : spectrum.entries) {
        if (!(e.eigenvalue < lambda)) break;
        step_part += e.multiplicity * (root - std::sqrt(e.eigenvalue));
    }
    step_part *= 2.0 / s;
    const double smooth_part = (2.0 / 3.0) * a * geometry.volume / s * lambda * root;
    return (step_part - smooth_part) / lambda;
}

RemainderSeries remainder_series(const CountingSeries& series, double a, const DomainGeometry& geometry) {
    RemainderSeries out{series.grid, {}, {}, a, geometry};
    out.remainder.reserve(series.grid.size());
    out.cesaro.reserve(series.grid.size());
    for (std::size_t i = 0; i < series.grid.size(); ++i) {
        const double l = series.grid[i];
        out.remainder.push_back((static_cast<double>(series.values[i]) - a * geometry.volume * l) /
                                (geometry.boundary_length * std::sqrt(l)));
        out.cesaro.push_back(cesaro_mean(series.source, a, geometry, l));
    }
    return out;
}

// ---------------------------------------------------------------------------

double heat_tail_bound(const Spectrum& spectrum, double t) {
    if (!(t > 0.0)) throw RangeError("heat trace needs t > 0");
    return 2.0 * geometry_a(spectrum) * spectrum.domain.volume * std::exp(-t * spectrum.lambda_max) / t;
}

double heat_sum(const Spectrum& spectrum, double t) {
    if (!(t > 0.0)) throw RangeError("heat trace needs t > 0");
    double z = 0.0;
    // smallest terms first
    for (auto it = spectrum.entries.rbegin(); it != spectrum.entries.rend(); ++it) {
        z += it->multiplicity * std::exp(-t * it->eigenvalue);
    }
    return z;
}

double min_admissible_t(const Spectrum& spectrum) {
    if (spectrum.entries.empty()) {
        throw TailBoundError("empty spectrum: no t satisfies the tail criterion",
                             std::numeric_limits<double>::infinity());
    }
    auto ok = [&](double t) { return heat_tail_bound(spectrum, t) <= kTailRelativeBound * heat_sum(spectrum, t); };
    double hi = 1.0 / spectrum.lambda_max;
    int guard = 0;
    while (!ok(hi)) {
        hi *= 2.0;
        if (++guard > 2000 || !std::isfinite(hi)) {
            throw TailBoundError("no admissible t for this cutoff", std::numeric_limits<double>::infinity());
        }
    }
    double lo = hi;
    while (ok(lo) && lo > 1e-300) lo *= 0.5;
    if (ok(lo)) return lo;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = std::sqrt(lo * hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

HeatTraceSeries heat_trace(const Spectrum& spectrum, const std::vector<double>& t_grid) {
    HeatTraceSeries out;
    for (double t : t_grid) {
        const double z = heat_sum(spectrum, t);
        const double tail = heat_tail_bound(spectrum, t);
        if (!(tail <= kTailRelativeBound * z)) {
            const double tmin = spectrum.entries.empty() ? std::numeric_limits<double>::infinity()
                                                         : min_admissible_t(spectrum);
            throw TailBoundError("t=" + format_double(t) + " too small for lambda_max=" +
                                     format_double(spectrum.lambda_max) + "; minimal admissible t is " +
                                     format_double(tmin),
                                 tmin);
        }
        out.t.push_back(t);
        out.z.push_back(z);
        out.tail_bound.push_back(tail);
    }
    return out;
}

StieltjesCheck stieltjes_check(const Spectrum& spectrum, double t) {
    StieltjesCheck c{t, heat_sum(spectrum, t), 0.0, 0.0};
    // sum_i N_i (exp(-t tau_i) - exp(-t tau_{i+1})) + exp(-t L_max) N(L_max), with N_i the
    // count on [tau_i, tau_{i+1}); summed from the top.
    const auto& e = spectrum.entries;
    long long total = 0;
    for (const auto& x : e) total += x.multiplicity;
    double acc = std::exp(-t * spectrum.lambda_max) * static_cast<double>(total);
    long long n_i = total;
    for (std::size_t i = e.size(); i-- > 0;) {
        const double next = i + 1 < e.size() ? e[i + 1].eigenvalue : spectrum.lambda_max;
        acc += static_cast<double>(n_i) * std::exp(-t * e[i].eigenvalue) * -std::expm1(-t * (next - e[i].eigenvalue));
        n_i -= e[i].multiplicity;
    }
    c.stieltjes = acc;
    c.relative_gap = c.direct == 0.0 ? std::abs(acc) : std::abs(acc - c.direct) / std::abs(c.direct);
    return c;
}

// ---------------------------------------------------------------------------

std::string_view to_string(FitModel m) { return m == FitModel::Heat ? "heat" : "counting"; }

FitModel parse_fit_model(std::string_view s) {
    if (s == "heat") return FitModel::Heat;
    if (s == "counting") return FitModel::Counting;
    throw InputError("unknown fit model '" + std::string(s) + "'");
}

std::string_view to_string(HeatBasis b) { return b == HeatBasis::TwoTerm ? "two_term" : "with_constant"; }

std::vector<double> log_grid(double lo, double hi, int count) {
    if (count < 2) throw RangeError("grid needs at least two points");
    check_positive_window(lo, hi, "log grid");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double r = std::log(hi / lo);
    for (int i = 0; i < count; ++i) g[i] = lo * std::exp(r * i / (count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

FitReport fit_two_term(const std::vector<double>& x, const std::vector<double>& y, FitModel model,
                       const FitContext& context, const FitOptions& options) {
    if (x.size() != y.size()) throw InputError("fit samples: x and y differ in length");
    if (x.size() < 8) throw InputError("fit needs at least 8 samples");
    const auto n = static_cast<Eigen::Index>(x.size());
    const int cols = model == FitModel::Counting ? 1 : (options.basis == HeatBasis::TwoTerm ? 2 : 3);

    Eigen::MatrixXd design(n, cols);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (model == FitModel::Heat) {
            const double t = x[i];
            if (!(t > 0.0)) throw RangeError("heat samples need t > 0");
            design(i, 0) = 1.0;
            design(i, 1) = std::sqrt(t);
            if (cols == 3) design(i, 2) = t;
            rhs[i] = y[i] * t;
        } else {
            design(i, 0) = 1.0;
            rhs[i] = y[i];
        }
    }
    const Eigen::VectorXd col_norm = design.colwise().norm().transpose();
    const Eigen::MatrixXd scaled = design * col_norm.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto sv = svd.singularValues();
    const double cond = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    const double lo = *std::min_element(x.begin(), x.end());
    const double hi = *std::max_element(x.begin(), x.end());
    if (!(cond <= options.condition_limit)) {
        throw ConditioningError("fit window [" + format_double(lo) + ", " + format_double(hi) +
                                "] is ill-conditioned (condition number " + format_double(cond) +
                                "); suggested window [" + format_double(lo) + ", " + format_double(10.0 * lo) + "]");
    }
    const Eigen::VectorXd beta = scaled.colPivHouseholderQr().solve(rhs).cwiseQuotient(col_norm);

    FitReport r;
    r.model = model;
    r.basis = options.basis;
    r.window_lo = lo;
    r.window_hi = hi;
    r.samples = static_cast<int>(n);
    r.x = x;
    r.y = y;
    r.condition_number = cond;
    r.residual_norm = (rhs - design * beta).norm() / rhs.norm();
    r.residual_threshold = options.residual_threshold.value_or(model == FitModel::Heat ? 1e-3 : 5e-2);
    const double vol = context.geometry.volume;
    const double len = context.geometry.boundary_length;
    if (model == FitModel::Heat) {
        r.a_raw = beta[0];
        r.b_raw = beta[1];
        if (cols == 3) r.c_raw = beta[2];
        r.a_estimate = r.a_raw / vol;
        r.b_estimate = r.b_raw / len;
    } else {
        r.b_raw = beta[0];
        r.b_estimate = beta[0];
    }

    if (context.params && context.bc) {
        const int dim = context.geometry.dimension;
        const double conv = model == FitModel::Heat ? specfun::gamma_fn(1.0 + 0.5 * (dim - 1)) : 1.0;
        double best = std::numeric_limits<double>::infinity();
        for (Theory th : {Theory::Liu, Theory::CFLV}) {
            TheoryDistance d{th, {}, {}, {}, {}};
            try {
                d.target = conv * theory_b(*context.params, dim, *context.bc, th);
                d.distance = std::abs(r.b_estimate - *d.target);
                d.relative = *d.distance / std::abs(*d.target);
                if (*d.distance < best) {
                    best = *d.distance;
                    r.closest = th;
                }
            } catch (const SingularLimitError& e) {
                d.note = e.what();
            }
            r.discriminator.push_back(std::move(d));
        }
        r.verdict_emitted = r.closest.has_value() && r.residual_norm <= r.residual_threshold;
        if (!r.verdict_emitted) r.closest.reset();
    }
    return r;
}

FitReport fit_heat(const Spectrum& spectrum, std::optional<std::pair<double, double>> window,
                   const FitOptions& options) {
    double lo, hi;
    if (window) {
        std::tie(lo, hi) = *window;
    } else {
        lo = min_admissible_t(spectrum);
        hi = 10.0 * lo;
    }
    check_positive_window(lo, hi, "heat fit");
    const FitContext ctx{spectrum.domain, spectrum.params, spectrum.bc};
    auto run = [&](double a, double b) {
        const auto series = heat_trace(spectrum, log_grid(a, b, options.samples));
        return fit_two_term(series.t, series.z, FitModel::Heat, ctx, options);
    };
    FitReport r = run(lo, hi);
    if (options.stability) {
        const FitReport s = run(2.0 * lo, 2.0 * hi);
        r.shifted_window_lo = 2.0 * lo;
        r.shifted_window_hi = 2.0 * hi;
        r.b_shifted = s.b_estimate;
        r.stability = std::abs(s.b_estimate - r.b_estimate) / std::abs(r.b_estimate);
    }
    return r;
}

FitReport fit_counting(const Spectrum& spectrum, std::optional<std::pair<double, double>> window,
                       const FitOptions& options) {
    const auto [lo, hi] = window.value_or(std::pair{0.5 * spectrum.lambda_max, spectrum.lambda_max});
    check_positive_window(lo, hi, "counting fit");
    if (hi > spectrum.lambda_max) {
        throw RangeError("counting window upper end " + format_double(hi) + " exceeds lambda_max=" +
                         format_double(spectrum.lambda_max));
    }
    const double a = geometry_a(spectrum);
    const FitContext ctx{spectrum.domain, spectrum.params, spectrum.bc};
    const int count = std::max(options.samples, 8);
    auto run = [&](double l0, double l1) {
        std::vector<double> x(static_cast<std::size_t>(count)), y(x.size());
        for (int i = 0; i < count; ++i) {
            x[i] = l0 + (l1 - l0) * i / (count - 1);
            y[i] = cesaro_mean(spectrum, a, spectrum.domain, x[i]);
        }
        return fit_two_term(x, y, FitModel::Counting, ctx, options);
    };
    FitReport r = run(lo, hi);
    if (options.stability) {
        const FitReport s = run(0.5 * lo, 0.5 * hi);
        r.shifted_window_lo = 0.5 * lo;
        r.shifted_window_hi = 0.5 * hi;
        r.b_shifted = s.b_estimate;
        r.stability = std::abs(s.b_estimate - r.b_estimate) / std::abs(r.b_estimate);
    }
    return r;
}

CancellationReport cancellation_empirical(const Spectrum& dirichlet, const Spectrum& free,
                                    const DomainGeometry& geometry, const LameParams& params,
                                    double tolerance, const FitOptions& options) {
    if (dirichlet.bc != BoundaryCondition::Dirichlet || free.bc != BoundaryCondition::Free) {
        throw InputError("cancellation_empirical expects a Dirichlet and a Free spectrum");
    }
    if (!(dirichlet.domain == geometry) || !(free.domain == geometry)) {
        throw InputError("spectra and geometry refer to different domains");
    }
    if (!(dirichlet.params == params) || !(free.params == params)) {
        throw InputError("spectra were computed for different Lame parameters");
    }
    if (std::abs(dirichlet.lambda_max - free.lambda_max) > 1e-12 * dirichlet.lambda_max) {
        throw InputError("spectra have different cutoffs");
    }
    const double lo = std::max(min_admissible_t(dirichlet), min_admissible_t(free));
    const double hi = 10.0 * lo;
    const auto grid = log_grid(lo, hi, options.samples);
    const auto zm = heat_trace(dirichlet, grid);
    const auto zp = heat_trace(free, grid);
    std::vector<double> zs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) zs[i] = 0.5 * (zm.z[i] + zp.z[i]);

    FitOptions single = options;
    const FitReport fm = fit_two_term(grid, zm.z, FitModel::Heat, {geometry, params, BoundaryCondition::Dirichlet}, single);
    const FitReport fp = fit_two_term(grid, zp.z, FitModel::Heat, {geometry, params, BoundaryCondition::Free}, single);
    FitReport fs = fit_two_term(grid, zs, FitModel::Heat, {geometry, std::nullopt, std::nullopt}, single);

    CancellationReport rep{lo, hi, fm.b_raw, fp.b_raw, fs.b_raw, 0.0, tolerance, Verdict::Fail, std::move(fs)};
    rep.ratio = std::abs(rep.b_tilde_sum) / std::abs(rep.b_tilde_minus_fit);
    rep.verdict = rep.ratio <= tolerance ? Verdict::Pass : Verdict::Fail;
    return rep;
}

}  // namespace elastica::asymptotics
