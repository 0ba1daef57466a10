#include "nlsf/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlsf/errors.hpp"

namespace nlsf {

Grid Grid::centered(double length, std::size_t n) {
    Grid g;
    g.dx = length / static_cast<double>(n);
    g.x0 = -0.5 * length;
    g.n = n;
    return g;
}

ComplexField zero_field(const Grid& g, double t) {
    ComplexField f;
    f.x0 = g.x0;
    f.dx = g.dx;
    f.t = t;
    f.values.assign(g.n, cplx(0.0, 0.0));
    return f;
}

void validate(const ComplexField& q) {
    if (!(q.dx > 0.0))
        throw GridMismatch("field: dx must be positive");
    if (q.size() < 8)
        throw GridMismatch("field: need at least 8 samples, got " + std::to_string(q.size()));
    for (const cplx& v : q.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw GridMismatch("field: non-finite sample");
}

void check_same_grid(const ComplexField& a, const ComplexField& b) {
    if (a.size() != b.size() || std::abs(a.x0 - b.x0) > 1e-12 * (1.0 + std::abs(a.x0)) ||
        std::abs(a.dx - b.dx) > 1e-14 * a.dx)
        throw GridMismatch("fields live on different grids");
}

namespace {

// Trapezoid over the sampled interval; the weight callable maps x to a
// nonnegative multiplier of |q|^2.
template <class W>
double quad_norm(const ComplexField& q, W&& weight) {
    const std::size_t n = q.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * weight(q.x(i)) * std::norm(q.values[i]);
    }
    return std::sqrt(acc * q.dx);
}

} // namespace

double l2_norm(const ComplexField& q) {
    return quad_norm(q, [](double) { return 1.0; });
}

double weighted_norm(const ComplexField& q, double s) {
    return quad_norm(q, [s](double x) { return std::pow(1.0 + x * x, s); });
}

double max_abs(const ComplexField& q) {
    double m = 0.0;
    for (const cplx& v : q.values) m = std::max(m, std::abs(v));
    return m;
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
    check_same_grid(a, b);
    const std::size_t n = a.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::norm(a.values[i] - b.values[i]);
    }
    return std::sqrt(acc * a.dx);
}

} // namespace nlsf
