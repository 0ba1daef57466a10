#include <doctest.h>

#include <random>

#include "nlsf/errors.hpp"
#include "nlsf/evolver.hpp"
#include "nlsf/fft.hpp"
#include "nlsf/solitons.hpp"

using namespace nlsf;

namespace {

ComplexField exact_field(std::span<const SolitonParams> p, const Grid& g, double t) {
    ComplexField q = zero_field(g, t);
    for (std::size_t i = 0; i < g.n; ++i)
        q.values[i] = p.size() == 1 ? one_soliton(p[0], g.x(i), t)
                                    : two_soliton(p[0], p[1], g.x(i), t);
    return q;
}

const std::vector<SolitonParams> colliding_pair{{1.0, 1.0, 0.0, 0.0}, {-1.0, 1.5, 0.0, 0.0}};

} // namespace

TEST_CASE("fft matches the naive DFT oracle") {
    const std::size_t n = 256;
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> data(n), expect(n);
    for (auto& v : data) v = cplx(u(rng), u(rng));
    ref::dft(data, expect, -1);

    std::vector<cplx> work = data;
    const Fft fft(n);
    fft.forward(work.data());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(work[i] - expect[i]));
    CHECK(worst <= 1e-11);

    fft.inverse(work.data());
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(work[i] / static_cast<double>(n) - data[i]) <= 1e-13);
}

TEST_CASE("norms") {
    const Grid g = Grid::centered(80.0, 2048);
    SUBCASE("zero field") { CHECK(l2_norm(zero_field(g, 0.0)) == 0.0); }
    SUBCASE("homogeneity") {
        ComplexField q = exact_field(std::vector<SolitonParams>{{0.0, 0.5, 0.0, 0.0}}, g, 0.0);
        const double base = l2_norm(q);
        for (auto& v : q.values) v *= cplx(0.0, -2.5);
        CHECK(l2_norm(q) == doctest::Approx(2.5 * base).epsilon(1e-14));
    }
    SUBCASE("weighted norm reduces to L2 at s = 0") {
        const ComplexField q =
            exact_field(std::vector<SolitonParams>{{0.2, 0.7, 1.0, 0.0}}, g, 0.0);
        CHECK(weighted_norm(q, 0.0) == doctest::Approx(l2_norm(q)).epsilon(1e-14));
    }
    SUBCASE("narrow bump at the origin sees weight ~ 1") {
        ComplexField q = zero_field(g, 0.0);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            q.values[i] = std::exp(-x * x / (2 * 0.05 * 0.05));
        }
        CHECK(weighted_norm(q, 3.0) == doctest::Approx(l2_norm(q)).epsilon(1e-2));
    }
    SUBCASE("weighted soliton norm against a refined quadrature oracle") {
        const std::vector<SolitonParams> p{{0.0, 0.5, 0.0, 0.0}};
        const ComplexField q = exact_field(p, g, 0.0);
        const ComplexField qf = exact_field(p, Grid::centered(80.0, 16384), 0.0);
        CHECK(weighted_norm(q, 1.0) ==
              doctest::Approx(weighted_norm(qf, 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("refine_spectral reproduces the closed form at the new points") {
    const Grid g = Grid::centered(80.0, 1024);
    const std::vector<SolitonParams> p{{0.4, 0.8, 0.7, 0.3}};
    const ComplexField coarse = exact_field(p, g, 0.0);
    const ComplexField fine = refine_spectral(coarse, 4);
    REQUIRE(fine.size() == 4096);
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i)
        worst = std::max(worst, std::abs(fine.values[i] - one_soliton(p[0], fine.x(i), 0.0)));
    CHECK(worst <= 1e-10);
}

TEST_CASE("evolve: stationary 1-soliton stays on the closed form to 1e-6 at t = 10") {
    const std::vector<SolitonParams> p{{0.0, 0.5, 0.0, 0.0}};
    EvolveConfig cfg;
    cfg.length = 80.0;
    cfg.n = 2048;
    cfg.dt = 1e-3;
    cfg.t_end = 10.0;
    const Grid g = Grid::centered(cfg.length, cfg.n);
    const std::vector<double> times{0.0, 2.5, 5.0, 7.5, 10.0};
    const Trajectory traj = evolve(exact_field(p, g, 0.0), cfg, times);
    REQUIRE(traj.samples.size() == times.size());
    double worst = 0.0;
    for (const ComplexField& qt : traj.samples)
        worst = std::max(worst, l2_distance(qt, exact_field(p, g, qt.t)));
    CHECK(worst <= 1e-6);
    CHECK(traj.l2_drift <= 1e-10);
}

TEST_CASE("evolve: colliding two-soliton to t = 4 within 1e-5 of the closed form") {
    EvolveConfig cfg;
    cfg.length = 80.0;
    cfg.n = 2048;
    cfg.dt = 1e-3;
    cfg.t_end = 4.0;
    const Grid g = Grid::centered(cfg.length, cfg.n);
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
    const Trajectory traj = evolve(exact_field(colliding_pair, g, 0.0), cfg, times);
    double worst = 0.0;
    for (const ComplexField& qt : traj.samples)
        worst = std::max(worst, l2_distance(qt, exact_field(colliding_pair, g, qt.t)));
    CHECK(worst <= 1e-5);
    CHECK(traj.l2_drift <= 1e-10);

    // the humps have separated by t = 4: amplitudes 2 eta near x = -+16
    const ComplexField& last = traj.samples.back();
    double left_peak = 0.0, right_peak = 0.0;
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (last.x(i) < 0) left_peak = std::max(left_peak, std::abs(last.values[i]));
        else right_peak = std::max(right_peak, std::abs(last.values[i]));
    }
    CHECK(left_peak == doctest::Approx(2.0).epsilon(0.05));
    CHECK(right_peak == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("evolve: time reversal recovers the initial data") {
    const std::vector<SolitonParams> p{{0.3, 0.6, 0.0, 0.0}};
    EvolveConfig cfg;
    cfg.length = 80.0;
    cfg.n = 2048;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const Grid g = Grid::centered(cfg.length, cfg.n);
    const ComplexField q0 = exact_field(p, g, 0.0);
    const std::vector<double> tend{2.0};

    Trajectory fwd = evolve(q0, cfg, tend);
    ComplexField back = fwd.samples.back();
    for (auto& v : back.values) v = std::conj(v);
    back.t = 0.0;
    Trajectory rev = evolve(back, cfg, tend);
    ComplexField recovered = rev.samples.back();
    for (auto& v : recovered.values) v = std::conj(v);
    recovered.t = 0.0;
    CHECK(l2_distance(recovered, q0) <= 1e-7);
}

TEST_CASE("evolve: halving dt reduces the error about fourfold") {
    const std::vector<SolitonParams> p{{0.0, 0.7, 0.0, 0.0}};
    const Grid g = Grid::centered(80.0, 2048);
    const ComplexField q0 = exact_field(p, g, 0.0);
    const std::vector<double> tend{2.0};
    double err[2];
    const double dts[2] = {4e-3, 2e-3};
    for (int k = 0; k < 2; ++k) {
        EvolveConfig cfg;
        cfg.length = 80.0;
        cfg.n = 2048;
        cfg.dt = dts[k];
        cfg.t_end = 2.0;
        cfg.order = 2; // the Strang kernel itself
        const Trajectory traj = evolve(q0, cfg, tend);
        err[k] = l2_distance(traj.samples.back(), exact_field(p, g, 2.0));
    }
    const double ratio = err[0] / err[1];
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("evolve guards") {
    const Grid g = Grid::centered(80.0, 2048);
    EvolveConfig cfg;
    cfg.length = 80.0;
    cfg.n = 2048;
    cfg.t_end = 1.0;
    const std::vector<double> times{1.0};

    SUBCASE("nonlinear rotation per step too large") {
        cfg.dt = 0.5;
        const ComplexField q0 =
            exact_field(std::vector<SolitonParams>{{0.0, 0.5, 0.0, 0.0}}, g, 0.0);
        CHECK_THROWS_AS((void)evolve(q0, cfg, times), CFLViolation);
    }
    SUBCASE("initial data touching the boundary") {
        cfg.dt = 1e-3;
        const ComplexField q0 =
            exact_field(std::vector<SolitonParams>{{0.0, 0.5, -39.5, 0.0}}, g, 0.0);
        CHECK_THROWS_AS((void)evolve(q0, cfg, times), BoundaryContamination);
    }
    SUBCASE("grid mismatch") {
        cfg.dt = 1e-3;
        const ComplexField q0 = exact_field(std::vector<SolitonParams>{{0.0, 0.5, 0.0, 0.0}},
                                            Grid::centered(40.0, 1024), 0.0);
        CHECK_THROWS_AS((void)evolve(q0, cfg, times), GridMismatch);
    }
    SUBCASE("non power-of-two sample count") {
        cfg.dt = 1e-3;
        cfg.n = 1000;
        const ComplexField q0 = exact_field(std::vector<SolitonParams>{{0.0, 0.5, 0.0, 0.0}},
                                            Grid{-40.0, 80.0 / 1000.0, 1000}, 0.0);
        CHECK_THROWS_AS((void)evolve(q0, cfg, times), GridMismatch);
    }
}
