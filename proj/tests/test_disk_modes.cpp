#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "elastica/asymptotics.hpp"
#include "elastica/disk_modes.hpp"
#include "elastica/errors.hpp"

using namespace elastica;
using namespace elastica::disk;

namespace {

std::vector<double> std_bessel_zeros(int k, double x_max) {
    std::vector<double> z;
    const double nu = k;
    for (double x = 0.5; x < x_max; x += 0.01) {
        if (std::cyl_bessel_j(nu, x) * std::cyl_bessel_j(nu, x + 0.01) < 0.0) {
            double lo = x, hi = x + 0.01;
            for (int i = 0; i < 80; ++i) {
                const double m = 0.5 * (lo + hi);
                (std::cyl_bessel_j(nu, lo) * std::cyl_bessel_j(nu, m) <= 0.0 ? hi : lo) = m;
            }
            if (0.5 * (lo + hi) < x_max) z.push_back(0.5 * (lo + hi));
        }
    }
    return z;
}

}  // namespace

TEST(WaveNumbers, Ordering) {
    const auto w = WaveNumbers::of(10.0, LameParams(1.0, 1.0));
    EXPECT_NEAR(w.s, std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(w.p, std::sqrt(10.0 / 3.0), 1e-15);
    EXPECT_LT(w.p, w.s);
}

TEST(DiskPotential, DecoupledIsRejected) {
    EXPECT_THROW(disk_spectrum_potential(LameParams(1, -1), BoundaryCondition::Dirichlet, 50.0),
                 DegenerateDecompositionError);
}

TEST(DiskPotential, AxisymmetricFamiliesDirichlet) {
    const LameParams p(1.0, 1.0);
    const double lmax = 150.0;
    const auto modes = disk_modes_for_index(0, p, BoundaryCondition::Dirichlet, lmax);
    // D_0 = p s J_1(p) J_1(s): shear mu j^2 and compressional (lambda + 2 mu) j^2
    std::vector<double> expect;
    for (double j : std_bessel_zeros(1, std::sqrt(lmax))) expect.push_back(j * j);
    for (double j : std_bessel_zeros(1, std::sqrt(lmax / 3.0))) expect.push_back(3.0 * j * j);
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(modes.size(), expect.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        EXPECT_NEAR(modes[i].lambda_ev, expect[i], 1e-9 * expect[i]);
        EXPECT_EQ(modes[i].multiplicity, 1);
    }
    EXPECT_NEAR(modes[0].lambda_ev, 14.681970642123893, 1e-9);
}

TEST(DiskPotential, DeterminantResidualsAndMultiplicity) {
    const auto ps = disk_spectrum_potential(LameParams(1.0, 1.0), BoundaryCondition::Dirichlet, 200.0);
    EXPECT_TRUE(ps.complete);
    EXPECT_FALSE(ps.flagged);
    for (const auto& m : ps.modes) {
        EXPECT_LE(std::abs(m.determinant_residual), 1e-9 * m.determinant_scale) << m.k << " " << m.lambda_ev;
        EXPECT_EQ(m.multiplicity, m.k == 0 ? 1 : 2);
        EXPECT_GT(m.lambda_ev, 0.0);
    }
    EXPECT_EQ(ps.spectrum.total_count(), 54);
}

TEST(DiskPotential, FreeHasThreeRigidModes) {
    const auto ps = disk_spectrum_potential(LameParams(1.0, 0.5), BoundaryCondition::Free, 40.0);
    ASSERT_FALSE(ps.spectrum.entries.empty());
    EXPECT_EQ(ps.spectrum.entries[0].eigenvalue, 0.0);
    EXPECT_EQ(ps.spectrum.entries[0].multiplicity, 3);
    EXPECT_GT(ps.spectrum.entries[1].eigenvalue, 0.1);
}

TEST(DiskPotential, MonotoneInCutoff) {
    const LameParams p(1.0, 2.0);
    const auto small = disk_spectrum_potential(p, BoundaryCondition::Free, 120.0);
    const auto large = disk_spectrum_potential(p, BoundaryCondition::Free, 180.0);
    for (double l : {10.0, 50.0, 100.0, 120.0}) {
        EXPECT_EQ(asymptotics::count_below(small.spectrum, l), asymptotics::count_below(large.spectrum, l));
    }
}

TEST(DiskPotential, KmaxTruncationIsReported) {
    const auto ps = disk_spectrum_potential(LameParams(1.0, 1.0), BoundaryCondition::Dirichlet, 400.0, 3);
    EXPECT_FALSE(ps.complete);
    EXPECT_LT(ps.spectrum.lambda_max, 400.0);
    EXPECT_EQ(ps.k_max_used, 3);
}

TEST(DiskPde, ModesSolveTheNavierLameSystem) {
    const LameParams p(1.0, 1.0);
    const auto modes = disk_modes_for_index(0, p, BoundaryCondition::Dirichlet, 60.0);
    bool saw_shear = false, saw_comp = false;
    for (const auto& m : modes) {
        const auto r = verify_mode_pde(m, p, BoundaryCondition::Dirichlet, 2048);
        EXPECT_LE(r.pde_residual, 1e-6);
        EXPECT_LE(r.boundary_residual, 1e-8);
        if (m.family == ModeFamily::ShearK0) {
            saw_shear = true;
            EXPECT_LE(r.div_shear, 1e-8);
        }
        if (m.family == ModeFamily::CompressionalK0) {
            saw_comp = true;
            EXPECT_LE(r.curl_compressional, 1e-8);
        }
    }
    EXPECT_TRUE(saw_shear);
    EXPECT_TRUE(saw_comp);
    for (int k : {1, 3}) {
        for (const auto& m : disk_modes_for_index(k, p, BoundaryCondition::Free, 80.0)) {
            if (m.family == ModeFamily::Rigid) continue;
            const auto r = verify_mode_pde(m, p, BoundaryCondition::Free, 1024);
            EXPECT_LE(r.pde_residual, 1e-5) << k << " " << m.lambda_ev;
            EXPECT_LE(r.boundary_residual, 1e-8) << k << " " << m.lambda_ev;
        }
    }
}

TEST(DiskPde, ScalingOfTheSubDisk) {
    const LameParams p(1.0, 1.0);
    const auto m = disk_modes_for_index(2, p, BoundaryCondition::Dirichlet, 60.0).front();
    const auto a = verify_mode_pde(m, p, BoundaryCondition::Dirichlet, 1024, 1.0);
    const auto b = verify_mode_pde(m, p, BoundaryCondition::Dirichlet, 1024, 1.0 / std::sqrt(2.0));
    EXPECT_LE(a.pde_residual, 1e-5);
    EXPECT_LE(b.pde_residual, 1e-5);
}
