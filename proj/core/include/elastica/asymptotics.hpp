#pragma once

// Counting function, Weyl remainder, heat trace and two-term coefficient fits.

#include <optional>
#include <string>
#include <vector>

#include "elastica/elastic_core.hpp"
#include "elastica/spectrum.hpp"

namespace elastica::asymptotics {

struct CountingSeries {
    Spectrum source;
    std::vector<double> grid;
    std::vector<long long> values;  // N(L) = #{tau < L} with multiplicity
};

/// Number of eigenvalues strictly below `lambda`, with multiplicity (no range check).
long long count_below(const Spectrum& spectrum, double lambda);

/// Throws RangeError when a grid point is <= 0 or exceeds spectrum.lambda_max.
CountingSeries counting(const Spectrum& spectrum, const std::vector<double>& grid);

struct RemainderSeries {
    std::vector<double> grid;
    std::vector<double> remainder;  // (N - a V L) / (S sqrt(L))
    std::vector<double> cesaro;     // (1/L) int_0^L R(s) ds, exact for step data
    double a;
    DomainGeometry geometry;
};

RemainderSeries remainder_series(const CountingSeries& series, double a, const DomainGeometry& geometry);

/// Closed-form Cesaro mean of R over [0, lambda].
double cesaro_mean(const Spectrum& spectrum, double a, const DomainGeometry& geometry, double lambda);

// ---------------------------------------------------------------------------
// Heat trace

inline constexpr double kTailRelativeBound = 1e-6;

struct HeatTraceSeries {
    std::vector<double> t;
    std::vector<double> z;
    std::vector<double> tail_bound;  // 2 a V exp(-t lambda_max) / t
};

/// Weyl majorant of the truncated tail: int_{lambda_max}^inf exp(-t L) d(2 a V L).
double heat_tail_bound(const Spectrum& spectrum, double t);

/// Sum of mult exp(-t tau) over the spectrum (no admissibility check).
double heat_sum(const Spectrum& spectrum, double t);

/// Smallest t with tail_bound(t) <= kTailRelativeBound Z(t).
double min_admissible_t(const Spectrum& spectrum);

/// Throws TailBoundError (carrying min_admissible_t) when some t violates the tail criterion.
HeatTraceSeries heat_trace(const Spectrum& spectrum, const std::vector<double>& t_grid);

struct StieltjesCheck {
    double t;
    double direct;      // sum exp(-t tau)
    double stieltjes;   // exp(-t L_max) N(L_max) + t int_0^L_max exp(-t L) N(L) dL
    double relative_gap;
};

StieltjesCheck stieltjes_check(const Spectrum& spectrum, double t);

// ---------------------------------------------------------------------------
// Fits

enum class FitModel { Counting, Heat };
std::string_view to_string(FitModel m);
FitModel parse_fit_model(std::string_view s);

/// Heat model: Z t = A + B sqrt(t) (two_term) or A + B sqrt(t) + C t (with_constant,
/// which absorbs the O(1) term of the expansion).
enum class HeatBasis { TwoTerm, WithConstant };
std::string_view to_string(HeatBasis b);

struct FitOptions {
    HeatBasis basis = HeatBasis::WithConstant;
    std::optional<double> residual_threshold;  // default: heat 1e-3, counting 5e-2
    double condition_limit = 1e10;
    int samples = 24;
    bool stability = true;
};

struct TheoryDistance {
    Theory theory;
    std::optional<double> target;    // per unit boundary length
    std::optional<double> distance;  // |estimate - target|
    std::optional<double> relative;  // distance / |target|
    std::string note;
};

struct FitReport {
    FitModel model;
    HeatBasis basis;
    double window_lo;
    double window_hi;
    int samples;
    std::vector<double> x;
    std::vector<double> y;
    // Raw coefficients: heat Z ~ A / t + B / sqrt(t) (+ C); counting R-bar ~ b.
    double a_raw = 0.0;
    double b_raw = 0.0;
    std::optional<double> c_raw;
    // Normalised: heat a~ = A / V, b~ = B / S; counting b = b_raw.
    double a_estimate = 0.0;
    double b_estimate = 0.0;
    double residual_norm = 0.0;  // ||y - fit|| / ||y||
    double residual_threshold = 0.0;
    double condition_number = 0.0;
    // second fit on a shifted window
    std::optional<double> shifted_window_lo;
    std::optional<double> shifted_window_hi;
    std::optional<double> b_shifted;
    std::optional<double> stability;  // |b_shifted - b| / |b|
    std::vector<TheoryDistance> discriminator;
    bool verdict_emitted = false;
    std::optional<Theory> closest;
};

struct FitContext {
    DomainGeometry geometry;
    std::optional<LameParams> params;  // enables the discriminator
    std::optional<BoundaryCondition> bc;
};

/// Least-squares fit on the given samples (heat: x = t, y = Z; counting: x = L, y = R-bar).
/// Needs >= 8 samples. Throws ConditioningError when the scaled design matrix has
/// condition number above options.condition_limit.
FitReport fit_two_term(const std::vector<double>& x, const std::vector<double>& y, FitModel model,
                       const FitContext& context, const FitOptions& options = {});

/// Heat fit on [lo, hi] (default [t_min, 10 t_min]) with the shifted window [2 lo, 2 hi].
FitReport fit_heat(const Spectrum& spectrum, std::optional<std::pair<double, double>> window = {},
                   const FitOptions& options = {});

/// Counting fit of the Cesaro mean on [lo, hi] (default [lambda_max / 2, lambda_max]) with
/// the shifted window [lo / 2, hi / 2]. Throws RangeError when hi exceeds lambda_max.
FitReport fit_counting(const Spectrum& spectrum, std::optional<std::pair<double, double>> window = {},
                       const FitOptions& options = {});

/// Log-spaced grid with `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

struct CancellationReport {
    double t_lo;
    double t_hi;
    double b_tilde_minus_fit;  // raw boundary coefficient of Z-
    double b_tilde_plus_fit;   // raw boundary coefficient of Z+
    double b_tilde_sum;        // raw boundary coefficient of (Z- + Z+) / 2
    double ratio;              // |b_sum| / |b-|
    double tolerance;
    Verdict verdict;
    FitReport sum_fit;
};

/// Fits Z_sum = (Z- + Z+) / 2 and tests |b~_sum| <= tolerance |b~-|.
/// Throws InputError when the spectra disagree in domain, parameters or cutoff.
CancellationReport cancellation_empirical(const Spectrum& dirichlet, const Spectrum& free,
                                    const DomainGeometry& geometry, const LameParams& params,
                                    double tolerance = 0.1, const FitOptions& options = {});

}  // namespace elastica::asymptotics
