#include "elastica/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "elastica/errors.hpp"

namespace elastica {
namespace {

const char* const kRequiredKeys[] = {"domain", "bc", "mu", "lambda", "lambda_max", "method"};

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw InputError("malformed number for " + std::string(what) + ": '" +
                         std::string(text) + "'");
    }
    return v;
}

std::string join_tags(const std::vector<std::string>& tags) {
    std::string out;
    std::set<std::string> seen;
    for (const auto& t : tags) {
        if (t.empty() || !seen.insert(t).second) continue;
        if (!out.empty()) out += '+';
        out += t;
    }
    return out;
}

}  // namespace

std::string_view to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::Potential: return "potential";
        case SpectrumMethod::FEM: return "fem";
        case SpectrumMethod::AnalyticDecoupled: return "analytic";
    }
    return "unknown";
}

SpectrumMethod parse_spectrum_method(std::string_view s) {
    if (s == "potential") return SpectrumMethod::Potential;
    if (s == "fem") return SpectrumMethod::FEM;
    if (s == "analytic") return SpectrumMethod::AnalyticDecoupled;
    throw InputError("unknown spectrum method '" + std::string(s) + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InputError("cannot format number");
    return std::string(buf, ptr);
}

long long Spectrum::total_count() const {
    long long n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
}

std::vector<double> Spectrum::expanded() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total_count()));
    for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.eigenvalue);
    return out;
}

void Spectrum::validate() const {
    double prev = -1.0;
    for (const auto& e : entries) {
        if (!std::isfinite(e.eigenvalue) || e.eigenvalue < 0.0) {
            throw InputError("spectrum contains a negative or non-finite eigenvalue");
        }
        if (e.eigenvalue < prev) throw InputError("spectrum eigenvalues are not nondecreasing");
        if (e.multiplicity < 1) throw InputError("spectrum multiplicity must be >= 1");
        if (e.eigenvalue > lambda_max) {
            throw InputError("spectrum eigenvalue " + format_double(e.eigenvalue) +
                             " exceeds lambda_max " + format_double(lambda_max));
        }
        if (bc == BoundaryCondition::Dirichlet && e.eigenvalue == 0.0) {
            throw InputError("Dirichlet spectrum must be strictly positive");
        }
        prev = e.eigenvalue;
    }
}

std::vector<SpectrumEntry> merge_multiplicities(std::vector<SpectrumEntry> raw, double rel_tol,
                                                double zero_scale) {
    std::stable_sort(raw.begin(), raw.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.eigenvalue < b.eigenvalue;
    });
    std::vector<SpectrumEntry> out;
    std::vector<std::string> tags;
    double group_sum = 0.0;
    int group_mult = 0;
    double group_first = 0.0;
    auto flush = [&] {
        if (group_mult == 0) return;
        out.push_back({group_sum / group_mult, group_mult, join_tags(tags)});
        tags.clear();
        group_sum = 0.0;
        group_mult = 0;
    };
    for (const auto& e : raw) {
        if (group_mult > 0) {
            const double gap = std::abs(e.eigenvalue - group_first);
            const double scale = std::max(std::abs(e.eigenvalue), zero_scale);
            if (gap > rel_tol * scale) flush();
        }
        if (group_mult == 0) group_first = e.eigenvalue;
        group_sum += e.eigenvalue * e.multiplicity;
        group_mult += e.multiplicity;
        tags.push_back(e.mode_tag);
    }
    flush();
    return out;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    os << "# domain=" << to_string(s.domain.name) << '\n';
    os << "# bc=" << to_string(s.bc) << '\n';
    os << "# mu=" << format_double(s.params.mu()) << '\n';
    os << "# lambda=" << format_double(s.params.lambda()) << '\n';
    os << "# lambda_max=" << format_double(s.lambda_max) << '\n';
    os << "# method=" << to_string(s.method) << '\n';
    for (const auto& [k, v] : s.metadata) os << "# " << k << '=' << v << '\n';
    os << "index,eigenvalue,multiplicity,mode_tag\n";
    std::size_t index = 1;
    for (const auto& e : s.entries) {
        if (e.mode_tag.find_first_of(",\n") != std::string::npos) {
            throw InputError("mode_tag must not contain commas or newlines");
        }
        os << index++ << ',' << format_double(e.eigenvalue) << ',' << e.multiplicity << ','
           << e.mode_tag << '\n';
    }
}

Spectrum read_spectrum_csv(std::istream& is) {
    std::map<std::string, std::string> pre;
    std::vector<std::string> order;
    std::string line;
    bool header_seen = false;
    std::vector<SpectrumEntry> entries;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw InputError("malformed preamble line: " + line);
            pre[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "index,eigenvalue,multiplicity,mode_tag") {
                throw InputError("unexpected spectrum header: " + line);
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() != 4) {
            throw InputError("spectrum row " + std::to_string(line_no) + " needs 4 fields");
        }
        const double ev = parse_double(fields[1], "eigenvalue");
        const double mult = parse_double(fields[2], "multiplicity");
        if (mult < 1.0 || mult != std::floor(mult)) {
            throw InputError("multiplicity must be a positive integer on row " +
                             std::to_string(line_no));
        }
        entries.push_back({ev, static_cast<int>(mult), fields[3]});
    }
    if (!header_seen) throw InputError("spectrum file has no header row");
    for (const char* key : kRequiredKeys) {
        if (!pre.count(key)) throw InputError(std::string("spectrum preamble lacks '") + key + "'");
    }
    const LameParams params(parse_double(pre["mu"], "mu"), parse_double(pre["lambda"], "lambda"));
    Spectrum s{DomainGeometry::of(parse_domain(pre["domain"])),
               parse_boundary_condition(pre["bc"]),
               params,
               parse_double(pre["lambda_max"], "lambda_max"),
               parse_spectrum_method(pre["method"]),
               std::move(entries),
               {}};
    for (auto& [k, v] : pre) {
        if (std::find(std::begin(kRequiredKeys), std::end(kRequiredKeys), k) ==
            std::end(kRequiredKeys)) {
            s.metadata[k] = v;
        }
    }
    s.validate();
    return s;
}

void write_spectrum_file(const std::string& path, const Spectrum& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open '" + path + "' for writing");
    write_spectrum_csv(os, s);
    if (!os) throw InputError("failed writing '" + path + "'");
}

Spectrum read_spectrum_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open spectrum file '" + path + "'");
    return read_spectrum_csv(is);
}

}  // namespace elastica
