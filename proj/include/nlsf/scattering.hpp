#pragma once

#include <span>
#include <vector>

#include "nlsf/field.hpp"
#include "nlsf/solitons.hpp"
#include "nlsf/zsfield.hpp"

namespace nlsf {

/// Rectangle in the open upper half-plane scanned for zeros of a(z).
struct SearchRegion {
    double xi_min = -2.0, xi_max = 2.0;
    double eta_min = 0.1, eta_max = 2.5;
    int scan_nx = 40, scan_ny = 40;
};

struct ScatteringData {
    std::vector<SpectralPoint> eigenvalues;
    std::vector<cplx> norming;
    std::vector<std::pair<cplx, cplx>> a_samples; // optional (z, a(z)) pairs
    Grid grid;
    double t = 0.0;
    double eta_floor = 1e-3;
};

/// a(z) = lim_{x->+inf} psi1^-(x,z) e^{izx} for the left Jost solution
/// psi^- ~ (1,0) e^{-izx}. Marched in the reduced frame mu = psi e^{izx}
/// with a fourth-order Magnus step per cell (exact 2x2 exponentials).
cplx scattering_coefficient_a(const ComplexField& q, cplx z);

/// Argument-principle count of zeros of a inside the region (adaptive
/// boundary sampling).
int winding_number(const ComplexField& q, const SearchRegion& region);

/// Coarse |a| scan, Newton polish, winding-number cross-check. Throws
/// CountMismatch if the two counts disagree after scan refinement.
std::vector<SpectralPoint> find_eigenvalues(const ComplexField& q, const SearchRegion& region,
                                            double eta_floor = 1e-3);

/// Newton-polish an eigenvalue guess against this field's own a(z); needed
/// when carrying eigenvalues across grids. Throws NotAnEigenvalue when the
/// iteration fails to land on a zero.
SpectralPoint polish_eigenvalue(const ComplexField& q, SpectralPoint guess);

/// c_j with psi^-(x, z_j) = c_j psi^+(x, z_j), evaluated at the grid midpoint.
cplx norming_constant(const ComplexField& q, SpectralPoint zj);

/// L2-normalized decaying ZS solution at an eigenvalue, glued from the two
/// one-sided marches at the midpoint, in log-scaled form.
ZsVectorField bound_state(const ComplexField& q, SpectralPoint zj);

/// find_eigenvalues + norming constants packaged with the grid metadata.
ScatteringData scatter(const ComplexField& q, const SearchRegion& region);

/// Soliton parameters from scattering data. xi' and eta' are read off the
/// eigenvalues; (x', theta') come from c_j against a reference norming
/// constant c*_j computed by forward construction (zero-offset n-soliton at
/// the measured eigenvalues, same grid), so grid bias and inter-soliton
/// factors cancel in c_j / c*_j:
///   x'     = log|c/c*| / (2 eta'),
///   theta' = -arg(c/c*)/2 - xi' x'   (mod pi, reported in (-pi/2, pi/2]).
std::vector<SolitonParams> params_from_scattering(const ScatteringData& data);

namespace ref {
/// Serial |a| scan over a region grid (the OpenMP scan's reference twin).
std::vector<double> scan_abs_a(const ComplexField& q, const SearchRegion& region);
} // namespace ref

/// Parallel scan used by find_eigenvalues; exposed for the benchmark.
std::vector<double> scan_abs_a(const ComplexField& q, const SearchRegion& region);

} // namespace nlsf
