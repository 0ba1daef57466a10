#pragma once

#include <span>
#include <vector>

#include "nlsf/mat2.hpp"

namespace nlsf {

/// The n x n Gramian M_{k,j} = -i <s_j, s_k> / (zbar_k - z_j), its determinant
/// and cofactor matrix D_{j,k}. M is Hermitian, D real, D_{j,k} = conj(D_{k,j}).
struct GramianSystem {
    std::size_t n = 0;
    std::vector<cplx> M;   // row-major
    cplx det{};
    std::vector<cplx> cof; // cof[j*n + k] = cofactor of M_{j,k}

    cplx m(std::size_t k, std::size_t j) const { return M[k * n + j]; }
    cplx cofactor(std::size_t j, std::size_t k) const { return cof[j * n + k]; }
};

/// Dense LU with partial pivoting for the small systems used here.
struct Lu {
    std::size_t n = 0;
    std::vector<cplx> a;    // packed LU factors
    std::vector<int> piv;
    int sign = 1;

    cplx det() const;
    void solve(std::span<cplx> rhs) const; // in place
};

Lu lu_factor(std::span<const cplx> m, std::size_t n);

GramianSystem gramian(std::span<const ZsVector> svals, std::span<const SpectralPoint> zs);

/// Solve i s_k = sum_j <s_j,s_k>/(zbar_k - z_j) r_j for the r set by pivoted
/// LU; the explicit cofactor expression is kept as a test oracle.
std::vector<ZsVector> solve_r_from_s(std::span<const ZsVector> svals,
                                     std::span<const SpectralPoint> zs);

/// Inverse map: solve i r_k = sum_j <r_j,r_k>/(zbar_j - z_k) s_j for the s set.
std::vector<ZsVector> solve_s_from_r(std::span<const ZsVector> rvals,
                                     std::span<const SpectralPoint> zs);

/// chi(x,z) = I + sum_k i r_k (x) conj(s_k(x))^T / (z - z_k).
Mat2 build_chi(double x_eval, cplx z_eval, std::span<const ZsVector> rvals,
               std::span<const ZsVector> svals, std::span<const SpectralPoint> zs);

/// chi^+(x,z) = I - sum_k i s_k conj(r_k)^T / (z - zbar_k).
Mat2 build_chi_adjoint(double x_eval, cplx z_eval, std::span<const ZsVector> rvals,
                       std::span<const ZsVector> svals, std::span<const SpectralPoint> zs);

namespace ref {
/// Cofactor-formula route r_k = sum_j (D_{j,k}/D) s_j, used as an oracle
/// against the pivoted solve.
std::vector<ZsVector> solve_r_from_s(std::span<const ZsVector> svals,
                                     std::span<const SpectralPoint> zs);
} // namespace ref

} // namespace nlsf
