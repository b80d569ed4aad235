#include <gtest/gtest.h>

#include "elastica/adjudication.hpp"
#include "elastica/errors.hpp"

using namespace elastica;

TEST(CompareSpectra, IdenticalLists) {
    const std::vector<double> a{1.0, 2.0, 2.0, 5.0};
    const auto c = compare_spectra(a, a, {1e-6, 1e-6, 1e-6, 1e-6}, 6.0, 60);
    EXPECT_TRUE(c.one_to_one);
    EXPECT_TRUE(c.counts_agree);
    EXPECT_EQ(c.count_reference, 4);
    EXPECT_EQ(c.pairs.size(), 4u);
    EXPECT_FALSE(c.first_divergence.has_value());
}

TEST(CompareSpectra, MissingEigenvalueIsLocated) {
    const std::vector<double> ref{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> cand{1.0, 3.0, 4.0};
    const auto c = compare_spectra(ref, cand, {1e-6, 1e-6, 1e-6}, 4.5, 90);
    EXPECT_FALSE(c.one_to_one);
    EXPECT_FALSE(c.counts_agree);
    ASSERT_TRUE(c.first_divergence.has_value());
    EXPECT_GT(*c.first_divergence, 2.0);
    EXPECT_LE(*c.first_divergence, 2.05);
    EXPECT_EQ(*c.first_mismatch, 2);
}

TEST(CompareSpectra, SamplesNearEigenvaluesAreSkipped) {
    const std::vector<double> ref{1.0};
    const std::vector<double> cand{1.0 + 1e-3};
    const auto c = compare_spectra(ref, cand, {2e-3}, 2.0, 2);  // samples at 1 and 2
    EXPECT_EQ(c.skipped_samples, 1);
    EXPECT_TRUE(c.counts_agree);
    EXPECT_TRUE(c.one_to_one);
}

TEST(CompareSpectra, InputValidation) {
    EXPECT_THROW(compare_spectra({1.0}, {1.0}, {}, 2.0), InputError);
    EXPECT_THROW(compare_spectra({2.0, 1.0}, {1.0, 2.0}, {0.1, 0.1}, 3.0), InputError);
    EXPECT_THROW(compare_spectra({1.0}, {1.0}, {0.1}, 0.0), RangeError);
}

TEST(Adjudication, SmallCoupledDisk) {
    const auto a = adjudicate_disk(LameParams(1.0, 1.0), BoundaryCondition::Dirichlet, 60.0, 1.0 / 32, 200);
    EXPECT_TRUE(a.comparison.one_to_one);
    EXPECT_TRUE(a.comparison.counts_agree);
    EXPECT_EQ(a.comparison.count_reference, a.comparison.count_candidate);
    EXPECT_GT(a.comparison.count_reference, 10);
    for (const auto& p : a.comparison.pairs) EXPECT_LE(std::abs(p.reference - p.candidate), p.tolerance);
    EXPECT_DOUBLE_EQ(a.h_fine, a.h_coarse / 2);
}
