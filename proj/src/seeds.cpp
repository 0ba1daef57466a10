#include "nlsf/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlsf/errors.hpp"

namespace nlsf {

namespace {

// Exponent of the vacuum factor: w = -i zbar (x - xk) - 2 i zbar^2 t + i theta.
cplx vacuum_exponent(const SolitonParams& p, double x, double t) {
    const cplx i(0.0, 1.0);
    const cplx zb(p.xi, -p.eta);
    return -i * zb * (x - p.x0) - 2.0 * i * zb * zb * t + i * p.theta;
}

// Midpoints of a grid function between samples i and i+1, cubic where the
// four-point stencil fits, linear at the ends.
std::vector<cplx> midpoints(const std::vector<cplx>& u) {
    const std::size_t n = u.size();
    std::vector<cplx> m(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (i >= 1 && i + 2 < n)
            m[i] = (-u[i - 1] + 9.0 * u[i] + 9.0 * u[i + 1] - u[i + 2]) / 16.0;
        else
            m[i] = 0.5 * (u[i] + u[i + 1]);
    }
    return m;
}

// One RK4 sweep of y' = a y + b(x), b given at samples and midpoints.
// dir = +1 marches left to right from y(0) = y0, dir = -1 right to left
// from y(n-1) = y0.
std::vector<cplx> rk4_sweep(cplx a, const std::vector<cplx>& b, const std::vector<cplx>& bm,
                            double dx, int dir, cplx y0) {
    const std::size_t n = b.size();
    std::vector<cplx> y(n);
    const double h = dir > 0 ? dx : -dx;
    if (dir > 0) {
        y[0] = y0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const cplx k1 = a * y[i] + b[i];
            const cplx k2 = a * (y[i] + 0.5 * h * k1) + bm[i];
            const cplx k3 = a * (y[i] + 0.5 * h * k2) + bm[i];
            const cplx k4 = a * (y[i] + h * k3) + b[i + 1];
            y[i + 1] = y[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    } else {
        y[n - 1] = y0;
        for (std::size_t i = n - 1; i > 0; --i) {
            const cplx k1 = a * y[i] + b[i];
            const cplx k2 = a * (y[i] + 0.5 * h * k1) + bm[i - 1];
            const cplx k3 = a * (y[i] + 0.5 * h * k2) + bm[i - 1];
            const cplx k4 = a * (y[i] + h * k3) + b[i - 1];
            y[i - 1] = y[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return y;
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

std::vector<ZsVectorField> vacuum_seed(std::span<const SolitonParams> params, double t,
                                       const Grid& grid) {
    check_distinct(params);
    std::vector<ZsVectorField> seeds;
    seeds.reserve(params.size());
    for (const SolitonParams& p : params) {
        ZsVectorField f = make_zs_field(grid, p.spectral(), t);
        for (std::size_t i = 0; i < grid.n; ++i) {
            const cplx w = vacuum_exponent(p, grid.x(i), t);
            const double ell = std::abs(w.real());
            f.c1[i] = std::exp(w - ell);
            f.c2[i] = -std::exp(-w - ell);
            f.logscale[i] = ell;
        }
        seeds.push_back(std::move(f));
    }
    return seeds;
}

JostPair jost_functions(const ComplexField& q0, SpectralPoint zp, double t) {
    validate(q0);
    const std::size_t n = q0.size();
    const double qmax = max_abs(q0);
    if (qmax > 0.0) {
        const double edge = std::max(std::abs(q0.values.front()), std::abs(q0.values.back()));
        if (edge > 1e-8 * qmax)
            throw EdgeDecay("jost_functions: background does not decay at the grid edges");
    }
    if (l2_norm(q0) > kJostSeedEps0)
        throw SeedTooLarge("jost_functions: ||q0|| exceeds the small-data threshold " +
                           std::to_string(kJostSeedEps0));

    const cplx i(0.0, 1.0);
    const cplx zb = zp.zbar();
    const std::vector<cplx>& q = q0.values;
    std::vector<cplx> qc(n);
    for (std::size_t k = 0; k < n; ++k) qc[k] = std::conj(q[k]);

    std::vector<cplx> f1(n, 1.0), f2(n, 0.0), g1(n, 0.0), g2(n, 1.0);
    std::vector<cplx> b(n), prev;

    // f1' = q0 f2            f1(-L) = 1   (marched rightward)
    // f2' = 2i zbar f2 - conj(q0) f1      f2(+L) = 0   (marched leftward)
    // g1' = -2i zbar g1 + q0 g2           g1(-L) = 0   (marched rightward)
    // g2' = -conj(q0) g1     g2(+L) = 1   (marched leftward)
    // Each homogeneous mode decays in its marching direction; the iteration
    // contracts at rate O(||q0||^2).
    bool converged = false;
    for (int sweep = 0; sweep < 60; ++sweep) {
        prev = f1;
        for (std::size_t k = 0; k < n; ++k) b[k] = -qc[k] * f1[k];
        f2 = rk4_sweep(2.0 * i * zb, b, midpoints(b), q0.dx, -1, 0.0);
        for (std::size_t k = 0; k < n; ++k) b[k] = q[k] * f2[k];
        f1 = rk4_sweep(0.0, b, midpoints(b), q0.dx, +1, 1.0);

        for (std::size_t k = 0; k < n; ++k) b[k] = q[k] * g2[k];
        g1 = rk4_sweep(-2.0 * i * zb, b, midpoints(b), q0.dx, +1, 0.0);
        for (std::size_t k = 0; k < n; ++k) b[k] = -qc[k] * g1[k];
        g2 = rk4_sweep(0.0, b, midpoints(b), q0.dx, -1, 1.0);

        if (sup_diff(f1, prev) < 1e-14) { converged = true; break; }
    }
    if (!converged)
        throw SeedTooLarge("jost_functions: Picard iteration did not converge");

    JostPair jp{make_zs_field(q0.grid(), zp, t), make_zs_field(q0.grid(), zp, t)};
    jp.f.c1 = std::move(f1);
    jp.f.c2 = std::move(f2);
    jp.g.c1 = std::move(g1);
    jp.g.c2 = std::move(g2);
    return jp;
}

std::vector<ZsVectorField> jost_seed(const ComplexField& q0,
                                     std::span<const SolitonParams> params, double t) {
    check_distinct(params);
    const Grid grid = q0.grid();
    std::vector<ZsVectorField> seeds;
    seeds.reserve(params.size());
    for (const SolitonParams& p : params) {
        const JostPair jp = jost_functions(q0, p.spectral(), t);
        ZsVectorField s = make_zs_field(grid, p.spectral(), t);
        for (std::size_t k = 0; k < grid.n; ++k) {
            const cplx w = vacuum_exponent(p, grid.x(k), t);
            const double ell = std::abs(w.real());
            const cplx ep = std::exp(w - ell);
            const cplx em = std::exp(-w - ell);
            s.c1[k] = ep * jp.f.c1[k] - em * jp.g.c1[k];
            s.c2[k] = ep * jp.f.c2[k] - em * jp.g.c2[k];
            s.logscale[k] = ell;
        }
        seeds.push_back(std::move(s));
    }
    return seeds;
}

} // namespace nlsf
