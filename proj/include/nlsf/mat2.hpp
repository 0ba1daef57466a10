#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "nlsf/field.hpp"

namespace nlsf {

/// Spectral point z = xi + i*eta in the open upper half-plane (eta > 0).
struct SpectralPoint {
    double xi = 0.0;
    double eta = 1.0;

    cplx z() const { return cplx(xi, eta); }
    cplx zbar() const { return cplx(xi, -eta); }
};

/// Value of one of the C^2 vectors s_k, r_k at a point.
using ZsVector = std::array<cplx, 2>;

/// <u,v> = conj(u1)v1 + conj(u2)v2.
inline cplx dot(const ZsVector& u, const ZsVector& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

inline double norm2(const ZsVector& u) { return std::norm(u[0]) + std::norm(u[1]); }

/// Row-major 2x2 complex matrix.
struct Mat2 {
    cplx a11{}, a12{}, a21{}, a22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator*(cplx c) const { return {c * a11, c * a12, c * a21, c * a22}; }

    ZsVector operator*(const ZsVector& v) const {
        return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]};
    }

    Mat2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }

    cplx det() const { return a11 * a22 - a12 * a21; }
    cplx trace() const { return a11 + a22; }

    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
};

inline Mat2 operator*(cplx c, const Mat2& m) { return m * c; }

inline const Mat2 sigma3{1.0, 0.0, 0.0, -1.0};

/// Q(q) = [[0, q], [-conj(q), 0]], the anti-Hermitian potential block.
inline Mat2 pauli_q(cplx q) { return {0.0, q, -std::conj(q), 0.0}; }

/// U(x,z) = -i z sigma3 + Q(q), the x-part of the Lax pair.
inline Mat2 lax_u(cplx q, cplx z) {
    const cplx iz = cplx(0.0, 1.0) * z;
    return {-iz, q, -std::conj(q), iz};
}

/// V(x,t,z) = i(|q|^2 - 2z^2) sigma3 + 2z Q(q) - i Q(q_x) sigma3, the t-part.
inline Mat2 lax_v(cplx q, cplx qx, cplx z) {
    const cplx i(0.0, 1.0);
    const cplx d = i * (std::norm(q) - 2.0 * z * z);
    return {d, 2.0 * z * q + i * qx, -2.0 * z * std::conj(q) + i * std::conj(qx), -d};
}

/// exp(B) for a general 2x2 complex B, via the Cayley-Hamilton closed form.
inline Mat2 exp2(const Mat2& b) {
    const cplx half_tr = 0.5 * b.trace();
    // B = half_tr*I + C with tr C = 0; exp(C) = cosh(mu) I + sinh(mu)/mu C, mu^2 = -det C.
    const Mat2 c{b.a11 - half_tr, b.a12, b.a21, b.a22 - half_tr};
    const cplx mu2 = c.a11 * c.a11 + c.a12 * c.a21;
    const cplx mu = std::sqrt(mu2);
    cplx ch, shc;
    if (std::abs(mu) < 1e-6) {
        // series: cosh(mu) and sinh(mu)/mu around 0
        ch = 1.0 + mu2 * (0.5 + mu2 / 24.0);
        shc = 1.0 + mu2 * (1.0 / 6.0 + mu2 / 120.0);
    } else {
        ch = std::cosh(mu);
        shc = std::sinh(mu) / mu;
    }
    const cplx s = std::exp(half_tr);
    return {s * (ch + shc * c.a11), s * shc * c.a12, s * shc * c.a21, s * (ch + shc * c.a22)};
}

} // namespace nlsf
