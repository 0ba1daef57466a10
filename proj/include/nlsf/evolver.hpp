#pragma once

#include <span>
#include <vector>

#include "nlsf/field.hpp"

namespace nlsf {

struct EvolveConfig {
    double length = 80.0;
    std::size_t n = 2048;    // power of two
    double dt = 1e-3;
    double t_end = 10.0;
    bool dealias = true;     // 2/3 rule
    double boundary_tol = 1e-4; // fraction of max|q| tolerated near the edges
    int order = 4;           // 2 = plain Strang, 4 = Yoshida composition of it
};

struct Trajectory {
    std::vector<ComplexField> samples;
    double l2_drift = 0.0;       // max relative |  ||q(t)|| - ||q0||  | / ||q0||
    double boundary_level = 0.0; // max edge magnitude / max|q| seen at samples
};

/// Strang splitting for i q_t + q_xx + 2|q|^2 q = 0 on the periodic
/// truncation: half nonlinear rotation e^{2i|q|^2 dt/2}, exact dispersive
/// factor e^{-i k^2 dt} in spectral space, half nonlinear rotation.
/// Samples are emitted at the requested times (snapped to whole steps).
Trajectory evolve(const ComplexField& q0, const EvolveConfig& cfg,
                  std::span<const double> sample_times);

/// Band-limited interpolation onto a grid `factor` times finer (power of two
/// factor), via zero-padding the Fourier spectrum.
ComplexField refine_spectral(const ComplexField& q, std::size_t factor);

/// Refine until dx <= target_dx (no-op when already fine enough).
ComplexField refine_to_dx(const ComplexField& q, double target_dx);

} // namespace nlsf
