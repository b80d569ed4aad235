#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "elastica/elastic_core.hpp"

namespace elastica {

enum class SpectrumMethod { Potential, FEM, AnalyticDecoupled };

std::string_view to_string(SpectrumMethod m);
SpectrumMethod parse_spectrum_method(std::string_view s);

struct SpectrumEntry {
    double eigenvalue;
    int multiplicity;
    std::string mode_tag;

    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Ordered eigenvalue list with multiplicities, valid for eigenvalues <= lambda_max.
struct Spectrum {
    DomainGeometry domain;
    BoundaryCondition bc;
    LameParams params;
    double lambda_max;
    SpectrumMethod method;
    std::vector<SpectrumEntry> entries;
    // Extra provenance (mesh size, k_max, ...). Written to the CSV preamble.
    std::map<std::string, std::string> metadata;

    /// Total number of eigenvalues counted with multiplicity.
    long long total_count() const;
    /// Eigenvalues repeated according to multiplicity, ascending.
    std::vector<double> expanded() const;
    /// Throws InputError if entries are unsorted, negative, have multiplicity < 1,
    /// exceed lambda_max, or if a Dirichlet spectrum contains 0.
    void validate() const;
};

inline constexpr double kDefaultMergeTolerance = 1e-6;

/// Sorts values and merges neighbours whose relative gap is <= rel_tol (absolute gap
/// <= rel_tol * zero_scale near zero) into one entry with summed multiplicity.
/// Tags of merged entries are joined with '+' (duplicates dropped).
std::vector<SpectrumEntry> merge_multiplicities(std::vector<SpectrumEntry> raw,
                                                double rel_tol = kDefaultMergeTolerance,
                                                double zero_scale = 1.0);

// ---------------------------------------------------------------------------
// CSV spectrum files:
//   # key=value   preamble (domain, bc, mu, lambda, lambda_max, method, extras)
//   index,eigenvalue,multiplicity,mode_tag

void write_spectrum_csv(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& is);
void write_spectrum_file(const std::string& path, const Spectrum& s);
Spectrum read_spectrum_file(const std::string& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace elastica
