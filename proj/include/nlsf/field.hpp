#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlsf {

using cplx = std::complex<double>;

/// Uniform spatial grid x_i = x0 + i*dx, i = 0..n-1.
struct Grid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    double length() const { return dx * static_cast<double>(n); }

    /// Grid of n points covering [-length/2, length/2), periodic convention.
    static Grid centered(double length, std::size_t n);

    bool operator==(const Grid&) const = default;
};

/// Sampled complex-valued function q(x) at one time.
struct ComplexField {
    double x0 = 0.0;
    double dx = 1.0;
    double t = 0.0;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    Grid grid() const { return Grid{x0, dx, values.size()}; }
};

ComplexField zero_field(const Grid& g, double t = 0.0);

/// Throws GridMismatch unless dx > 0, n >= 8 and all samples are finite.
void validate(const ComplexField& q);

void check_same_grid(const ComplexField& a, const ComplexField& b);

/// Trapezoidal L2 norm.
double l2_norm(const ComplexField& q);

/// Weighted norm ||<x>^s q||_L2 with <x> = sqrt(1 + x^2).
double weighted_norm(const ComplexField& q, double s);

double max_abs(const ComplexField& q);

/// L2 norm of the difference a - b (common grid required).
double l2_distance(const ComplexField& a, const ComplexField& b);

} // namespace nlsf
