#include "elastica/adjudication.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "elastica/disk_modes.hpp"
#include "elastica/errors.hpp"
#include "elastica/fem.hpp"

namespace elastica {
namespace {

long long strict_count(const std::vector<double>& sorted, double lambda) {
    return std::lower_bound(sorted.begin(), sorted.end(), lambda) - sorted.begin();
}

}  // namespace

SpectrumComparison compare_spectra(const std::vector<double>& reference,
                                   const std::vector<double>& candidate,
                                   const std::vector<double>& tolerance, double lambda_limit,
                                   int samples) {
    if (tolerance.size() != candidate.size()) {
        throw InputError("compare_spectra: one tolerance per candidate eigenvalue is required");
    }
    if (!std::is_sorted(reference.begin(), reference.end()) ||
        !std::is_sorted(candidate.begin(), candidate.end())) {
        throw InputError("compare_spectra: eigenvalue lists must be sorted");
    }
    if (!(lambda_limit > 0.0) || samples < 1) throw RangeError("compare_spectra: bad limit or sample count");

    SpectrumComparison out{};
    out.lambda_limit = lambda_limit;
    out.count_reference = std::upper_bound(reference.begin(), reference.end(), lambda_limit) - reference.begin();
    out.count_candidate = std::upper_bound(candidate.begin(), candidate.end(), lambda_limit) - candidate.begin();

    auto tol_at = [&](std::size_t i, double v) {
        return i < tolerance.size() ? std::max(tolerance[i], 1e-9 * v) : 1e-6 * v;
    };
    const auto n_pairs = static_cast<std::size_t>(std::max(out.count_reference, out.count_candidate));
    for (std::size_t i = 0; i < n_pairs; ++i) {
        if (i >= reference.size() || i >= candidate.size()) {
            ++out.mismatched_pairs;
            if (!out.first_mismatch) out.first_mismatch = static_cast<int>(i) + 1;
            continue;
        }
        const double tol = tol_at(i, candidate[i]);
        PairedEigenvalue p{static_cast<int>(i) + 1, reference[i], candidate[i], tol,
                           std::abs(reference[i] - candidate[i]) <= tol};
        if (!p.within) {
            ++out.mismatched_pairs;
            if (!out.first_mismatch) out.first_mismatch = p.index;
        }
        out.pairs.push_back(p);
    }

    for (int k = 1; k <= samples; ++k) {
        const double l = lambda_limit * k / samples;
        bool near = false;
        for (std::size_t i = 0; i < candidate.size() && !near; ++i) {
            near = std::abs(l - candidate[i]) <= tol_at(i, candidate[i]);
        }
        for (std::size_t i = 0; i < reference.size() && !near; ++i) {
            near = std::abs(l - reference[i]) <= tol_at(i, reference[i]);
        }
        if (near) {
            ++out.skipped_samples;
            continue;
        }
        CountSample s{l, strict_count(reference, l), strict_count(candidate, l)};
        if (s.n_reference != s.n_candidate) {
            ++out.divergent_samples;
            if (!out.first_divergence) out.first_divergence = l;
        }
        out.samples.push_back(s);
    }
    out.one_to_one = out.mismatched_pairs == 0 && out.count_reference == out.count_candidate;
    out.counts_agree = out.divergent_samples == 0;
    return out;
}

DiskAdjudication adjudicate_disk(const LameParams& params, BoundaryCondition bc, double lambda_limit,
                                 double h_coarse, int samples) {
    const double margin = 1.15 * lambda_limit;
    auto pot = disk::disk_spectrum_potential(params, bc, margin);

    const double h_fine = 0.5 * h_coarse;
    fem::SolveOptions coarse_opts;
    coarse_opts.lambda_max = margin;
    const auto coarse = fem::fem_spectrum(Domain::UnitDisk, params, bc, h_coarse, coarse_opts);
    fem::SolveOptions fine_opts;
    fine_opts.count = static_cast<int>(coarse.values.size());
    const auto fine = fem::fem_spectrum(Domain::UnitDisk, params, bc, h_fine, fine_opts);
    if (fine.values.size() != coarse.values.size()) {
        throw SolverError("fine mesh returned a different number of eigenvalues than the coarse mesh");
    }

    const std::size_t n = coarse.values.size();
    std::vector<double> ext(n), tol(n);
    for (std::size_t i = 0; i < n; ++i) {
        ext[i] = fem::richardson(coarse.values[i], fine.values[i], h_coarse / h_fine);
        tol[i] = std::max(3.0 * std::abs(ext[i] - fine.values[i]), 1e-6 * std::abs(ext[i]));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ext[a] < ext[b]; });
    DiskAdjudication out{pot.spectrum, fine.spectrum, coarse.values, fine.values, {}, {}, h_coarse, h_fine, {}};
    for (std::size_t i : order) {
        out.fem_extrapolated.push_back(ext[i]);
        out.fem_tolerance.push_back(tol[i]);
    }
    out.comparison = compare_spectra(pot.spectrum.expanded(), out.fem_extrapolated, out.fem_tolerance,
                                     lambda_limit, samples);
    return out;
}

}  // namespace elastica
