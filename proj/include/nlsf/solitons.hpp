#pragma once

#include <span>
#include <vector>

#include "nlsf/field.hpp"
#include "nlsf/mat2.hpp"

namespace nlsf {

/// One soliton: velocity parameter xi, amplitude parameter eta > 0, position
/// offset x0 and phase theta (theta acts mod pi in the field).
struct SolitonParams {
    double xi = 0.0;
    double eta = 1.0;
    double x0 = 0.0;
    double theta = 0.0;

    SpectralPoint spectral() const { return SpectralPoint{xi, eta}; }
};

/// Translation/phase pair phi_j = x + 4 xi_j t - x_j,
/// psi_j = theta_j - xi_j (x + 2 xi_j t - x_j) + 2 eta_j^2 t.
struct PhasePair {
    double phi = 0.0;
    double psi = 0.0;
};

PhasePair phases(const SolitonParams& p, double x, double t);

/// q = 2 eta sech(2 eta phi) e^{2 i psi}. The envelope translates with
/// x + 4 xi t (the 2 xi t variant fails the PDE-residual oracle).
cplx one_soliton(const SolitonParams& p, double x, double t);

/// Closed 2-soliton ratio 2 Sigma^S / D^S with common-exponent factoring;
/// D^S is real and strictly positive for distinct (xi, eta) pairs.
cplx two_soliton(const SolitonParams& p1, const SolitonParams& p2, double x, double t);

/// log D^S for the closed 2-soliton form (modulus-identity checks).
double two_soliton_log_det(const SolitonParams& p1, const SolitonParams& p2, double x,
                           double t);

/// n-soliton on a grid via the vacuum dressing route.
ComplexField n_soliton(std::span<const SolitonParams> params, const Grid& grid, double t);

void check_distinct(std::span<const SolitonParams> params);

/// Max interior magnitude of i d_t q + d_x^2 q + 2|q|^2 q on a centered
/// stencil built from snapshots at t-dt, t, t+dt.
double nls_residual(const ComplexField& qm, const ComplexField& q0, const ComplexField& qp,
                    double dt);

} // namespace nlsf
