#include "nlsf/zsfield.hpp"

#include <algorithm>
#include <cmath>

namespace nlsf {

ZsVectorField make_zs_field(const Grid& g, SpectralPoint zp, double t) {
    ZsVectorField f;
    f.x0 = g.x0;
    f.dx = g.dx;
    f.t = t;
    f.zp = zp;
    f.c1.assign(g.n, cplx(0.0, 0.0));
    f.c2.assign(g.n, cplx(0.0, 0.0));
    f.logscale.assign(g.n, 0.0);
    return f;
}

void ZsVectorField::normalize_mantissas() {
    for (std::size_t i = 0; i < size(); ++i) {
        const double m = std::max(std::abs(c1[i]), std::abs(c2[i]));
        if (m <= 0.0) continue;
        c1[i] /= m;
        c2[i] /= m;
        logscale[i] += std::log(m);
    }
}

void ZsVectorField::normalize_l2() {
    const std::size_t n = size();
    if (n == 0) return;
    double lmax = logscale[0];
    for (double l : logscale) lmax = std::max(lmax, l);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double s = std::exp(logscale[i] - lmax);
        acc += w * (std::norm(c1[i]) + std::norm(c2[i])) * s * s;
    }
    const double lognorm = lmax + 0.5 * std::log(acc * dx);
    for (double& l : logscale) l -= lognorm;
}

} // namespace nlsf
