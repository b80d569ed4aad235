#pragma once

// Unit-disk spectrum by the Helmholtz-potential ansatz
//   u = grad phi + curl(z psi),  phi = A J_k(p r) cos(k theta),  psi = B J_k(s r) sin(k theta)
// with p^2 = L / (lambda + 2 mu) and s^2 = L / mu. For each angular index k the
// eigenvalues are the zeros of a 2x2 boundary determinant in L.

#include <vector>

#include "elastica/elastic_core.hpp"
#include "elastica/spectrum.hpp"

namespace elastica::disk {

struct WaveNumbers {
    double lambda_ev;
    double p;  // compressional
    double s;  // shear

    static WaveNumbers of(double lambda_ev, const LameParams& params);
};

enum class ModeFamily { Coupled, CompressionalK0, ShearK0, Rigid };

struct DiskMode {
    int k;
    ModeFamily family;
    double lambda_ev;
    int multiplicity;
    double determinant_residual;
    double determinant_scale;
    // Potential amplitudes (A, B) of the boundary null vector, normalized to unit length.
    double amp_compressional;
    double amp_shear;
};

struct DeterminantValue {
    double value;
    double scale;  // product of boundary-matrix row norms
};

/// Real normal form of the boundary determinant. Dirichlet:
///   D_k = -p s J_k'(p) J_k'(s) + k^2 J_k(p) J_k(s).
/// Free: determinant of the (sigma_rr, sigma_rtheta) rows at r = 1.
/// Throws DegenerateDecompositionError when lambda + mu == 0, ParameterDomainError for L <= 0.
double characteristic_det(int k, double lambda_ev, const LameParams& params, BoundaryCondition bc);
DeterminantValue characteristic_det_scaled(int k, double lambda_ev, const LameParams& params,
                                           BoundaryCondition bc);

/// 2x2 boundary matrix rows (for tests and null-vector extraction).
struct BoundaryMatrix {
    double m11, m12, m21, m22;
};
BoundaryMatrix boundary_matrix(int k, double lambda_ev, const LameParams& params,
                               BoundaryCondition bc);

inline constexpr int kMaxAngularIndex = 199;

struct PotentialSpectrum {
    Spectrum spectrum;
    std::vector<DiskMode> modes;  // one entry per distinct root and angular index
    int k_max_used = 0;
    bool complete = true;         // false when k_max truncated the requested range
    int max_step_halvings = 0;
    bool flagged = false;         // scan-step refinement never stabilised for some k
};

/// Scans every angular index, brackets each sign change of the determinant and bisects.
/// k_max < 0 selects it automatically (scan until two consecutive indices have no roots).
/// Free spectra include the three rigid motions at L = 0.
PotentialSpectrum disk_spectrum_potential(const LameParams& params, BoundaryCondition bc,
                                          double lambda_max, int k_max = -1);

/// Roots of one angular index below lambda_max (k = 0 returns both families).
std::vector<DiskMode> disk_modes_for_index(int k, const LameParams& params, BoundaryCondition bc,
                                           double lambda_max, int* halvings = nullptr,
                                           bool* flagged = nullptr);

struct PdeResidual {
    double pde_residual;        // max |P u - L u| / (L max|u|)
    double curl_compressional;  // max |curl u_p| / (s max|u|)
    double div_shear;           // max |div u_s| / (s max|u|)
    double boundary_residual;   // max boundary displacement or traction / (s max|u|)
    int samples;
};

/// Rebuilds the mode on a grid of spacing 2 / grid and applies the flat Navier-Lame
/// operator with fourth-order central differences. With scale != 1 the field
/// v(x) = u(scale x) on the disk of radius 1/scale is checked against eigenvalue scale^2 L.
PdeResidual verify_mode_pde(const DiskMode& mode, const LameParams& params,
                            BoundaryCondition bc, int grid = 2048, double scale = 1.0);

}  // namespace elastica::disk
