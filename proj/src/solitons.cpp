#include "nlsf/solitons.hpp"

#include <cmath>
#include <string>

#include "nlsf/dressing.hpp"
#include "nlsf/errors.hpp"
#include "nlsf/seeds.hpp"

namespace nlsf {

void check_distinct(std::span<const SolitonParams> params) {
    for (const SolitonParams& p : params)
        if (!(p.eta > 0.0)) throw DegenerateParams("soliton: eta must be positive");
    for (std::size_t j = 0; j < params.size(); ++j)
        for (std::size_t k = j + 1; k < params.size(); ++k) {
            const double d = std::hypot(params[j].xi - params[k].xi,
                                        params[j].eta - params[k].eta);
            if (d < 1e-10)
                throw DegenerateParams("soliton: coinciding (xi, eta) pairs at indices " +
                                       std::to_string(j) + "," + std::to_string(k));
        }
}

PhasePair phases(const SolitonParams& p, double x, double t) {
    PhasePair ph;
    ph.phi = x + 4.0 * p.xi * t - p.x0;
    ph.psi = p.theta - p.xi * (x + 2.0 * p.xi * t - p.x0) + 2.0 * p.eta * p.eta * t;
    return ph;
}

namespace {

double sech(double u) {
    const double e = std::exp(-std::abs(u));
    return 2.0 * e / (1.0 + e * e);
}

} // namespace

cplx one_soliton(const SolitonParams& p, double x, double t) {
    const auto [phi, psi] = phases(p, x, t);
    return 2.0 * p.eta * sech(2.0 * p.eta * phi) * std::exp(cplx(0.0, 2.0 * psi));
}

namespace {

struct TwoSolitonRatio {
    cplx sigma;   // Sigma^S * e^{-scale}
    double det;   // D^S * e^{-scale}
    double scale; // common exponent factored out of both
};

TwoSolitonRatio two_soliton_parts(const SolitonParams& p1, const SolitonParams& p2,
                                  double x, double t) {
    const auto [phi1, psi1] = phases(p1, x, t);
    const auto [phi2, psi2] = phases(p2, x, t);
    const double a = p1.eta * phi1;
    const double b = p2.eta * phi2;
    const double scale = 2.0 * (std::abs(a) + std::abs(b));
    const auto ex = [scale](double re, double im) { return std::exp(cplx(re - scale, im)); };

    const double dxi = p1.xi - p2.xi;
    const cplx dplus(p1.eta + p2.eta, dxi);
    const cplx dminus(p1.eta + p2.eta, -dxi);

    const cplx sigma =
        (ex(-2.0 * b, 2.0 * psi1) + ex(2.0 * b, 2.0 * psi1)) / (2.0 * p2.eta) +
        (ex(-2.0 * a, 2.0 * psi2) + ex(2.0 * a, 2.0 * psi2)) / (2.0 * p1.eta) -
        (ex(-2.0 * b, 2.0 * psi1) + ex(2.0 * a, 2.0 * psi2)) / dplus -
        (ex(-2.0 * a, 2.0 * psi2) + ex(2.0 * b, 2.0 * psi1)) / dminus;

    const auto er = [scale](double re) { return std::exp(re - scale); };
    const double pp = (p1.eta + p2.eta) * (p1.eta + p2.eta) + dxi * dxi;
    const double det =
        (er(-2.0 * a - 2.0 * b) + er(-2.0 * a + 2.0 * b) + er(2.0 * a - 2.0 * b) +
         er(2.0 * a + 2.0 * b)) /
            (4.0 * p1.eta * p2.eta) -
        (er(-2.0 * a - 2.0 * b) + 2.0 * std::cos(2.0 * (psi1 - psi2)) * er(0.0) +
         er(2.0 * a + 2.0 * b)) /
            pp;
    return {sigma, det, scale};
}

} // namespace

cplx two_soliton(const SolitonParams& p1, const SolitonParams& p2, double x, double t) {
    const SolitonParams both[2] = {p1, p2};
    check_distinct(both);
    const TwoSolitonRatio r = two_soliton_parts(p1, p2, x, t);
    return 2.0 * r.sigma / r.det;
}

double two_soliton_log_det(const SolitonParams& p1, const SolitonParams& p2, double x,
                           double t) {
    const TwoSolitonRatio r = two_soliton_parts(p1, p2, x, t);
    return r.scale + std::log(r.det);
}

ComplexField n_soliton(std::span<const SolitonParams> params, const Grid& grid, double t) {
    check_distinct(params);
    const auto seeds = vacuum_seed(params, t, grid);
    return dress(zero_field(grid, t), seeds).q;
}

double nls_residual(const ComplexField& qm, const ComplexField& q0, const ComplexField& qp,
                    double dt) {
    check_same_grid(qm, q0);
    check_same_grid(q0, qp);
    if (!(dt > 0.0)) throw GridMismatch("nls_residual: dt must be positive");
    const cplx i(0.0, 1.0);
    const double inv_dx2 = 1.0 / (q0.dx * q0.dx);
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < q0.size(); ++k) {
        const cplx dt_term = i * (qp.values[k] - qm.values[k]) / (2.0 * dt);
        const cplx dxx =
            (q0.values[k + 1] - 2.0 * q0.values[k] + q0.values[k - 1]) * inv_dx2;
        const cplx nl = 2.0 * std::norm(q0.values[k]) * q0.values[k];
        worst = std::max(worst, std::abs(dt_term + dxx + nl));
    }
    return worst;
}

} // namespace nlsf
