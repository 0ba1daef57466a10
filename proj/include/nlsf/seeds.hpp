#pragma once

#include <span>
#include <vector>

#include "nlsf/field.hpp"
#include "nlsf/solitons.hpp"
#include "nlsf/zsfield.hpp"

namespace nlsf {

/// Jost-type solutions over a small background: f -> (1,0) as x -> -inf,
/// g -> (0,1) as x -> +inf, both O(1) across the grid.
struct JostPair {
    ZsVectorField f;
    ZsVectorField g;
};

/// Vacuum seeds s_k(x) = exp(-i zbar_k (x-x_k) sigma3 - 2i zbar_k^2 t sigma3
/// + i theta_k sigma3) sigma3 (1,1), in log-scaled form.
std::vector<ZsVectorField> vacuum_seed(std::span<const SolitonParams> params, double t,
                                       const Grid& grid);

/// Solves the f/g systems for one spectral point by Picard iteration over the
/// two stable Volterra directions (f1 marched from the left, f2 from the
/// right; g mirrored), RK4 steps with cubic midpoint interpolation.
JostPair jost_functions(const ComplexField& q0, SpectralPoint zp, double t);

/// Seeds s_j = E f_j - E^{-1} g_j over the background q0, where E is the
/// vacuum exponential with the target soliton's (x_j, theta_j).
std::vector<ZsVectorField> jost_seed(const ComplexField& q0,
                                     std::span<const SolitonParams> params, double t);

/// L2 smallness threshold for the background accepted by jost_seed.
inline constexpr double kJostSeedEps0 = 0.1;

} // namespace nlsf
