#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlsf/evolver.hpp"
#include "nlsf/field.hpp"
#include "nlsf/scattering.hpp"
#include "nlsf/solitons.hpp"

namespace nlsf {

struct Perturbation {
    enum class Shape { gaussian, random_band };
    Shape shape = Shape::gaussian;
    double epsilon = 0.0;
    double weight_s = 1.0;   // exponent s in the L^{2,s} sizing, s > 1/2
    unsigned seed = 0;
    // gaussian: bump exp(-(x-center)^2 / (2 width^2)) e^{i modulation x}
    double center = 0.0;
    double width = 1.0;
    double modulation = 0.0;
    // random-band: seeded Fourier modes with |k| in [band_lo, band_hi],
    // gaussian envelope of the given width
    double band_lo = 0.25;
    double band_hi = 2.0;
};

struct ExperimentConfig {
    std::vector<SolitonParams> base;
    Perturbation perturbation;
    EvolveConfig evolve;
    SearchRegion search;
    std::vector<double> sample_times; // defaults to 0..t_end step 0.5 when empty
    bool do_undress = true;
};

struct DistanceSample {
    double t = 0.0;
    double distance = 0.0; // ||q(t) - q^{S'}(t)||_L2
    double l2 = 0.0;       // ||q(t)||_L2
    double edge = 0.0;     // edge magnitude / max|q|
};

struct StabilityReport {
    double epsilon = 0.0;
    std::vector<SolitonParams> recovered;
    double param_deviation = 0.0; // max over solitons and components
    std::vector<DistanceSample> distance_series;
    double sup_distance = 0.0;
    double constant_estimate = 0.0; // sup_distance / epsilon (0 when epsilon = 0)
    double residual_norm = 0.0;     // ||q~0|| after undressing (when enabled)
    int residual_eigenvalues = -1;  // eigenvalue count after undressing
    double l2_drift = 0.0;
    double boundary_level = 0.0;
};

/// q0 = qS + epsilon * shape / ||shape||_{L^{2,s}}; deterministic in the seed.
ComplexField perturb(const ComplexField& qS, const Perturbation& p);

/// Full orbital-stability pipeline: build q^S, perturb, recover parameters by direct
/// scattering, optionally undress to the soliton-free residual, evolve, and
/// compare against the closed-form q^{S'}(t) at the sample times.
StabilityReport run_experiment(const ExperimentConfig& cfg);

/// Max constant estimate across an epsilon sweep; sets *nonuniform when the
/// estimates spread by more than 5x.
double fit_constant(std::span<const StabilityReport> reports, bool* nonuniform = nullptr);

/// Deviation between recovered and base parameters, nearest-eigenvalue
/// matching, theta compared modulo pi.
double parameter_deviation(std::span<const SolitonParams> base,
                           std::span<const SolitonParams> recovered);

} // namespace nlsf
