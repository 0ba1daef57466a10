#pragma once

#include <vector>

#include "nlsf/field.hpp"
#include "nlsf/mat2.hpp"

namespace nlsf {

/// A C^2-valued function of x in split representation: the stored mantissa
/// pair (c1, c2) times exp(logscale) is the actual value. The common real
/// log factor carries the e^{+-eta x} growth that overflows doubles for
/// |x| >~ 350/eta; mantissas stay O(1).
struct ZsVectorField {
    double x0 = 0.0;
    double dx = 1.0;
    double t = 0.0;
    SpectralPoint zp;
    std::vector<cplx> c1, c2;
    std::vector<double> logscale;

    std::size_t size() const { return c1.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    Grid grid() const { return Grid{x0, dx, c1.size()}; }

    ZsVector mantissa(std::size_t i) const { return {c1[i], c2[i]}; }

    /// Value with the scale folded back in; overflows for large logscale.
    ZsVector value(std::size_t i) const {
        const double s = std::exp(logscale[i]);
        return {c1[i] * s, c2[i] * s};
    }

    /// Rebalance so max(|c1|,|c2|) = 1 at every sample (zero samples untouched).
    void normalize_mantissas();

    /// Shift logscale so the L2 norm of the represented field is 1.
    void normalize_l2();
};

ZsVectorField make_zs_field(const Grid& g, SpectralPoint zp, double t = 0.0);

} // namespace nlsf
