#pragma once

#include <span>
#include <vector>

#include "nlsf/field.hpp"
#include "nlsf/gramian.hpp"
#include "nlsf/zsfield.hpp"

namespace nlsf {

/// Dressed potential together with log det(M) per grid point. All Gramian
/// work happens on seed mantissas: with s_k = e^{l_k} m_k the scale factors
/// cancel identically in the transformation formula, and
/// log D = 2 sum_k l_k + log det(Mtilde).
struct DressResult {
    ComplexField q;
    std::vector<double> log_det;
};

/// q = q0 - (2/D) sum_{j,k} D_{j,k} s_{j,1} conj(s_{k,2}) pointwise over the
/// grid (pivoted solve per point; grid loop is OpenMP-parallel).
DressResult dress(const ComplexField& q0, std::span<const ZsVectorField> seeds);

/// Soliton removal: given bound states r_k of the potential q at z_k, solve
/// the inverse linear system for s_k and subtract the dressing update.
ComplexField undress(const ComplexField& q, std::span<const ZsVectorField> bound_states);

/// The r_k fields produced by the dressing: bound states of the dressed
/// potential at z_k (mantissas normalized).
std::vector<ZsVectorField> dressed_eigenfunctions(std::span<const ZsVectorField> seeds);

/// Max interior residual of |q|^2 - |q0|^2 - d_x^2 log D with centered
/// second differences.
double modulus_identity_residual(const ComplexField& q, const ComplexField& q0,
                                 std::span<const double> log_det);

/// Pointwise sums from the time-evolution proof: trace_sum should equal
/// 4 sum_j eta_j at every x, logdet_sum should equal -2 d_x log D.
struct DressingIdentities {
    std::vector<double> trace_sum;
    std::vector<double> logdet_sum;
};
DressingIdentities dressing_identities(std::span<const ZsVectorField> seeds);

/// Relative ZS residual max_i |d_x r - (-i z sigma3 + Q(q)) r| / local scale,
/// with a five-point derivative stencil on locally rescaled samples.
double zs_residual(const ZsVectorField& r, const ComplexField& q, cplx z);

namespace ref {
/// Serial reference using the explicit cofactor formula r_k = sum_j
/// (D_{j,k}/D) s_j instead of the pivoted solve.
DressResult dress(const ComplexField& q0, std::span<const ZsVectorField> seeds);
} // namespace ref

} // namespace nlsf
