#include "nlsf/gramian.hpp"

#include <cmath>
#include <string>

#include "nlsf/errors.hpp"

namespace nlsf {

Lu lu_factor(std::span<const cplx> m, std::size_t n) {
    Lu lu;
    lu.n = n;
    lu.a.assign(m.begin(), m.end());
    lu.piv.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu.a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu.a[i * n + k]);
            if (v > best) { best = v; p = i; }
        }
        lu.piv[k] = static_cast<int>(p);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu.a[k * n + j], lu.a[p * n + j]);
            lu.sign = -lu.sign;
        }
        const cplx pivot = lu.a[k * n + k];
        if (pivot == cplx(0.0, 0.0)) continue; // singular; det() reports 0
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu.a[i * n + k] / pivot;
            lu.a[i * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j) lu.a[i * n + j] -= f * lu.a[k * n + j];
        }
    }
    return lu;
}

cplx Lu::det() const {
    cplx d = static_cast<double>(sign);
    for (std::size_t k = 0; k < n; ++k) d *= a[k * n + k];
    return d;
}

void Lu::solve(std::span<cplx> rhs) const {
    // apply the full row permutation before the triangular sweeps
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = static_cast<std::size_t>(piv[k]);
        if (p != k) std::swap(rhs[k], rhs[p]);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) rhs[i] -= a[i * n + k] * rhs[k];
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = k + 1; j < n; ++j) rhs[k] -= a[k * n + j] * rhs[j];
        rhs[k] /= a[k * n + k];
    }
}

namespace {

std::vector<cplx> gramian_matrix(std::span<const ZsVector> svals,
                                 std::span<const SpectralPoint> zs) {
    const std::size_t n = svals.size();
    std::vector<cplx> m(n * n);
    const cplx mi(0.0, -1.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            m[k * n + j] = mi * dot(svals[j], svals[k]) / (zs[k].zbar() - zs[j].z());
    return m;
}

// Matrix of the inverse linear system: A_{k,j} = -i <r_j,r_k>/(zbar_j - z_k),
// so that r = A s componentwise.
std::vector<cplx> inverse_system_matrix(std::span<const ZsVector> rvals,
                                        std::span<const SpectralPoint> zs) {
    const std::size_t n = rvals.size();
    std::vector<cplx> m(n * n);
    const cplx mi(0.0, -1.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            m[k * n + j] = mi * dot(rvals[j], rvals[k]) / (zs[j].zbar() - zs[k].z());
    return m;
}

void require_nonsingular(const std::vector<cplx>& m, std::size_t n, cplx det) {
    double diag = 1.0;
    for (std::size_t k = 0; k < n; ++k) diag *= std::abs(m[k * n + k]);
    if (std::abs(det) < 1e-12 * diag)
        throw SingularGramian("Gramian determinant below tolerance: |D| = " +
                              std::to_string(std::abs(det)));
}

// Solve M x = b for both vector components at once.
std::vector<ZsVector> solve_system(const std::vector<cplx>& m,
                                   std::span<const ZsVector> rhs) {
    const std::size_t n = rhs.size();
    const Lu lu = lu_factor(m, n);
    require_nonsingular(m, n, lu.det());
    std::vector<cplx> c1(n), c2(n);
    for (std::size_t k = 0; k < n; ++k) { c1[k] = rhs[k][0]; c2[k] = rhs[k][1]; }
    lu.solve(c1);
    lu.solve(c2);
    std::vector<ZsVector> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = {c1[k], c2[k]};
    return out;
}

cplx minor_det(const std::vector<cplx>& m, std::size_t n, std::size_t row, std::size_t col) {
    std::vector<cplx> sub;
    sub.reserve((n - 1) * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == col) continue;
            sub.push_back(m[i * n + j]);
        }
    }
    const std::size_t k = n - 1;
    if (k == 0) return 1.0;
    if (k == 1) return sub[0];
    if (k == 2) return sub[0] * sub[3] - sub[1] * sub[2];
    return lu_factor(sub, k).det();
}

} // namespace

GramianSystem gramian(std::span<const ZsVector> svals, std::span<const SpectralPoint> zs) {
    const std::size_t n = svals.size();
    if (n == 0 || zs.size() != n)
        throw GridMismatch("gramian: seed/spectral point count mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(zs[k].eta > 0.0))
            throw DegenerateParams("gramian: eta must be positive");
        for (std::size_t j = k + 1; j < n; ++j)
            if (std::abs(zs[k].z() - zs[j].z()) < 1e-10)
                throw DegenerateParams("gramian: coinciding spectral points");
    }

    GramianSystem g;
    g.n = n;
    g.M = gramian_matrix(svals, zs);
    g.cof.resize(n * n);

    if (n <= 3) {
        // direct minors, exact for the small cases
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double sgn = ((j + k) % 2 == 0) ? 1.0 : -1.0;
                g.cof[j * n + k] = sgn * minor_det(g.M, n, j, k);
            }
        g.det = 0.0;
        for (std::size_t j = 0; j < n; ++j) g.det += g.M[j] * g.cof[j]; // expand along row 0
        require_nonsingular(g.M, n, g.det);
    } else {
        const Lu lu = lu_factor(g.M, n);
        g.det = lu.det();
        require_nonsingular(g.M, n, g.det);
        // D_{j,k} = D * (M^{-1})_{k,j}
        std::vector<cplx> col(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(col.begin(), col.end(), cplx(0.0, 0.0));
            col[j] = 1.0;
            lu.solve(col); // col = M^{-1} e_j, i.e. column j of the inverse
            for (std::size_t k = 0; k < n; ++k) g.cof[j * n + k] = g.det * col[k];
        }
    }
    return g;
}

std::vector<ZsVector> solve_r_from_s(std::span<const ZsVector> svals,
                                     std::span<const SpectralPoint> zs) {
    return solve_system(gramian_matrix(svals, zs), svals);
}

std::vector<ZsVector> solve_s_from_r(std::span<const ZsVector> rvals,
                                     std::span<const SpectralPoint> zs) {
    return solve_system(inverse_system_matrix(rvals, zs), rvals);
}

namespace {

Mat2 chi_sum(cplx z_eval, std::span<const ZsVector> left, std::span<const ZsVector> right,
             std::span<const cplx> poles, cplx factor) {
    Mat2 chi = Mat2::identity();
    for (std::size_t k = 0; k < left.size(); ++k) {
        const cplx denom = z_eval - poles[k];
        if (std::abs(denom) < 1e-9 * (1.0 + std::abs(z_eval)))
            throw PoleEvaluation("chi evaluated at a pole of the dressing factor");
        const cplx c = factor / denom;
        const ZsVector& u = left[k];
        const ZsVector& v = right[k];
        chi.a11 += c * u[0] * std::conj(v[0]);
        chi.a12 += c * u[0] * std::conj(v[1]);
        chi.a21 += c * u[1] * std::conj(v[0]);
        chi.a22 += c * u[1] * std::conj(v[1]);
    }
    return chi;
}

} // namespace

Mat2 build_chi(double, cplx z_eval, std::span<const ZsVector> rvals,
               std::span<const ZsVector> svals, std::span<const SpectralPoint> zs) {
    std::vector<cplx> poles(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) poles[k] = zs[k].z();
    return chi_sum(z_eval, rvals, svals, poles, cplx(0.0, 1.0));
}

Mat2 build_chi_adjoint(double, cplx z_eval, std::span<const ZsVector> rvals,
                       std::span<const ZsVector> svals, std::span<const SpectralPoint> zs) {
    std::vector<cplx> poles(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) poles[k] = zs[k].zbar();
    return chi_sum(z_eval, svals, rvals, poles, cplx(0.0, -1.0));
}

namespace ref {

std::vector<ZsVector> solve_r_from_s(std::span<const ZsVector> svals,
                                     std::span<const SpectralPoint> zs) {
    const GramianSystem g = gramian(svals, zs);
    std::vector<ZsVector> r(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        ZsVector acc{cplx(0.0, 0.0), cplx(0.0, 0.0)};
        for (std::size_t j = 0; j < g.n; ++j) {
            const cplx w = g.cofactor(j, k) / g.det;
            acc[0] += w * svals[j][0];
            acc[1] += w * svals[j][1];
        }
        r[k] = acc;
    }
    return r;
}

} // namespace ref

} // namespace nlsf
