#pragma once

// One-to-one comparison of two eigenvalue lists and the disk potential-vs-FEM experiment.

#include <optional>
#include <vector>

#include "elastica/elastic_core.hpp"
#include "elastica/spectrum.hpp"

namespace elastica {

struct PairedEigenvalue {
    int index;  // 1-based, counted with multiplicity
    double reference;
    double candidate;
    double tolerance;
    bool within;
};

struct CountSample {
    double lambda;
    long long n_reference;
    long long n_candidate;
};

struct SpectrumComparison {
    double lambda_limit;
    long long count_reference = 0;  // eigenvalues <= lambda_limit
    long long count_candidate = 0;
    std::vector<PairedEigenvalue> pairs;
    std::vector<CountSample> samples;
    int mismatched_pairs = 0;
    int divergent_samples = 0;
    int skipped_samples = 0;  // sample points too close to an eigenvalue to be decisive
    std::optional<double> first_divergence;  // smallest sample L with differing counts
    std::optional<int> first_mismatch;       // smallest index whose pair is out of tolerance
    bool one_to_one = false;
    bool counts_agree = false;
};

/// Pairs sorted lists index by index below lambda_limit and compares N(L) on `samples`
/// evenly spaced points in (0, lambda_limit]. `tolerance[i]` belongs to candidate[i].
SpectrumComparison compare_spectra(const std::vector<double>& reference,
                                   const std::vector<double>& candidate,
                                   const std::vector<double>& tolerance, double lambda_limit,
                                   int samples = 400);

struct DiskAdjudication {
    Spectrum potential;
    Spectrum fem_fine;
    std::vector<double> fem_coarse_values;
    std::vector<double> fem_fine_values;
    std::vector<double> fem_extrapolated;
    std::vector<double> fem_tolerance;  // max(3 |ext - fine|, 1e-6 ext)
    double h_coarse;
    double h_fine;
    SpectrumComparison comparison;
};

/// Determinant roots against FEM on meshes h and h / 2 (Richardson-extrapolated) for
/// all eigenvalues up to lambda_limit. Both sides are computed with a 15% margin above
/// the limit so pairs near the cutoff are not lost.
DiskAdjudication adjudicate_disk(const LameParams& params, BoundaryCondition bc, double lambda_limit,
                                 double h_coarse = 1.0 / 64.0, int samples = 400);

}  // namespace elastica
