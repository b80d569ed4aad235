#include <sstream>

#include <gtest/gtest.h>

#include "elastica/errors.hpp"
#include "elastica/spectrum.hpp"

using namespace elastica;

namespace {

Spectrum sample() {
    Spectrum s{DomainGeometry::of(Domain::UnitDisk), BoundaryCondition::Free, LameParams(1.25, 0.1), 50.0,
               SpectrumMethod::FEM, {}, {}};
    s.entries = {{0.0, 3, "rigid"}, {1.0 / 3.0, 2, "a"}, {7.123456789012345, 1, "b"}, {49.99999999, 4, ""}};
    s.metadata["h"] = "0.015625";
    return s;
}

}  // namespace

TEST(SpectrumFile, RoundTripIsByteIdentical) {
    const Spectrum s = sample();
    std::ostringstream a;
    write_spectrum_csv(a, s);
    std::istringstream in(a.str());
    const Spectrum r = read_spectrum_csv(in);
    std::ostringstream b;
    write_spectrum_csv(b, r);
    EXPECT_EQ(a.str(), b.str());
    ASSERT_EQ(r.entries.size(), s.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) EXPECT_EQ(r.entries[i], s.entries[i]);
    EXPECT_EQ(r.params, s.params);
    EXPECT_EQ(r.domain, s.domain);
    EXPECT_EQ(r.metadata.at("h"), "0.015625");
    EXPECT_NE(a.str().find("index,eigenvalue,multiplicity,mode_tag"), std::string::npos);
}

TEST(SpectrumFile, RejectsBadInput) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_spectrum_csv(in);
    };
    const std::string pre =
        "# domain=square\n# bc=dirichlet\n# mu=1\n# lambda=1\n# lambda_max=100\n# method=fem\n"
        "index,eigenvalue,multiplicity,mode_tag\n";
    EXPECT_NO_THROW(parse(pre + "1,2,1,\n2,3,2,x\n"));
    EXPECT_THROW(parse(pre + "1,3,1,\n2,2,1,\n"), InputError);    // decreasing
    EXPECT_THROW(parse(pre + "1,3,0,\n"), InputError);            // multiplicity
    EXPECT_THROW(parse(pre + "1,300,1,\n"), InputError);          // above cutoff
    EXPECT_THROW(parse(pre + "1,abc,1,\n"), InputError);
    EXPECT_THROW(parse("# domain=square\nindex,eigenvalue,multiplicity,mode_tag\n"), InputError);  // preamble
}

TEST(Spectrum, CountsAndExpansion) {
    const Spectrum s = sample();
    EXPECT_EQ(s.total_count(), 10);
    const auto e = s.expanded();
    ASSERT_EQ(e.size(), 10u);
    EXPECT_EQ(e[2], 0.0);
    EXPECT_EQ(e[3], 1.0 / 3.0);
}

TEST(Spectrum, MergeMultiplicities) {
    std::vector<SpectrumEntry> raw{{1e-12, 1, ""}, {0.0, 1, ""}, {-1e-13, 1, ""}, {5.0, 1, ""},
                                   {5.0 + 4e-6, 1, ""}, {5.1, 1, ""}};
    const auto m = merge_multiplicities(raw, 1e-6, 1.0);
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m[0].multiplicity, 3);
    EXPECT_EQ(m[1].multiplicity, 2);
    EXPECT_EQ(m[2].multiplicity, 1);
}
