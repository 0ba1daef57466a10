#include <doctest.h>

#include "nlsf/errors.hpp"
#include "nlsf/solitons.hpp"
#include "nlsf/stability.hpp"

using namespace nlsf;

namespace {

ExperimentConfig small_experiment() {
    ExperimentConfig cfg;
    cfg.base = {{0.5, 0.9, -3.0, 0.0}, {-0.5, 1.2, 3.0, 0.4}};
    cfg.evolve.length = 128.0;
    cfg.evolve.n = 4096;
    cfg.evolve.dt = 1e-3;
    cfg.evolve.t_end = 2.0;
    cfg.search = SearchRegion{-1.5, 1.5, 0.3, 2.0, 24, 24};
    cfg.sample_times = {0.0, 0.5, 1.0, 1.5, 2.0};
    cfg.perturbation.width = 1.5;
    cfg.perturbation.weight_s = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("perturb sizes the deviation exactly in the weighted norm") {
    const Grid g = Grid::centered(80.0, 2048);
    const ComplexField qS =
        n_soliton(std::vector<SolitonParams>{{0.0, 0.8, 0.0, 0.0}}, g, 0.0);

    SUBCASE("epsilon = 0 returns the input unchanged") {
        Perturbation p;
        p.epsilon = 0.0;
        const ComplexField q0 = perturb(qS, p);
        for (std::size_t i = 0; i < g.n; ++i) CHECK(q0.values[i] == qS.values[i]);
    }
    SUBCASE("gaussian bump lands at the requested size") {
        Perturbation p;
        p.epsilon = 1e-2;
        p.weight_s = 1.0;
        p.width = 1.3;
        const ComplexField q0 = perturb(qS, p);
        ComplexField diff = q0;
        for (std::size_t i = 0; i < g.n; ++i) diff.values[i] -= qS.values[i];
        CHECK(weighted_norm(diff, 1.0) == doctest::Approx(1e-2).epsilon(1e-10));
    }
    SUBCASE("random band is deterministic in the seed") {
        Perturbation p;
        p.shape = Perturbation::Shape::random_band;
        p.epsilon = 5e-3;
        p.seed = 77;
        const ComplexField a = perturb(qS, p);
        const ComplexField b = perturb(qS, p);
        for (std::size_t i = 0; i < g.n; ++i) CHECK(a.values[i] == b.values[i]);
        p.seed = 78;
        const ComplexField c = perturb(qS, p);
        double diff = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) diff += std::abs(c.values[i] - a.values[i]);
        CHECK(diff > 1e-6);
    }
}

TEST_CASE("zero-perturbation experiment reproduces the soliton to the solver floor") {
    ExperimentConfig cfg;
    cfg.base = {{0.3, 0.7, 0.5, 0.4}};
    cfg.evolve.length = 80.0;
    cfg.evolve.n = 2048;
    cfg.evolve.dt = 1e-3;
    cfg.evolve.t_end = 2.0;
    cfg.search = SearchRegion{-1.0, 1.0, 0.2, 1.5, 16, 16};
    cfg.sample_times = {0.0, 1.0, 2.0};
    cfg.perturbation.epsilon = 0.0;
    cfg.do_undress = false;

    const StabilityReport rep = run_experiment(cfg);
    CHECK(rep.param_deviation <= 1e-6);
    CHECK(rep.sup_distance <= 1e-5);
    CHECK(rep.constant_estimate == 0.0);
    CHECK(rep.l2_drift <= 1e-10);
}

TEST_CASE("epsilon sweep: linear scaling band, parameter bound, soliton-free residual") {
    ExperimentConfig cfg = small_experiment();
    std::vector<StabilityReport> reports;
    for (double eps : {1e-3, 1e-2}) {
        cfg.perturbation.epsilon = eps;
        reports.push_back(run_experiment(cfg));
        const StabilityReport& r = reports.back();
        CHECK(r.param_deviation <= 10.0 * eps);
        CHECK(r.sup_distance <= 10.0 * eps);
        CHECK(r.residual_norm <= 10.0 * eps);
        CHECK(r.residual_eigenvalues == 0);
        CHECK(r.l2_drift <= 1e-10);
        REQUIRE(r.distance_series.size() == cfg.sample_times.size());
        for (const DistanceSample& s : r.distance_series) {
            CHECK(s.distance >= 0.0);
            CHECK(s.l2 > 0.0);
        }
    }
    bool nonuniform = true;
    const double c = fit_constant(reports, &nonuniform);
    CHECK(c <= 10.0);
    CHECK_FALSE(nonuniform); // constants within a factor 5 across the sweep
}

TEST_CASE("breather parameters split under a velocity-coupling perturbation") {
    const Grid g = Grid::centered(128.0, 4096);
    const std::vector<SolitonParams> breather{{0.0, 1.0, 0.0, 0.0}, {0.0, 1.5, 0.0, 0.0}};
    const ComplexField qS = n_soliton(breather, g, 0.0);
    Perturbation pt;
    pt.epsilon = 1e-2;
    pt.width = 1.0;
    pt.modulation = 1.0;
    pt.center = 0.3;
    const ComplexField q0 = perturb(qS, pt);
    const SearchRegion reg{-1.0, 1.0, 0.3, 2.2, 24, 24};
    const auto rec = params_from_scattering(scatter(q0, reg));
    REQUIRE(rec.size() == 2);
    CHECK(std::abs(rec[0].xi - rec[1].xi) > 1e-5);      // velocities split
    CHECK(parameter_deviation(breather, rec) <= 10.0 * pt.epsilon);
}

TEST_CASE("fit_constant") {
    const auto mk = [](double eps, double c) {
        StabilityReport r;
        r.epsilon = eps;
        r.constant_estimate = c;
        return r;
    };
    SUBCASE("max of the estimates") {
        const std::vector<StabilityReport> reports{mk(1e-3, 2.1), mk(1e-2, 2.4)};
        bool flag = true;
        CHECK(fit_constant(reports, &flag) == 2.4);
        CHECK_FALSE(flag);
    }
    SUBCASE("non-uniformity flag at an 8x spread") {
        const std::vector<StabilityReport> reports{mk(1e-3, 1.0), mk(1e-2, 8.0)};
        bool flag = false;
        CHECK(fit_constant(reports, &flag) == 8.0);
        CHECK(flag);
    }
    SUBCASE("a single report is insufficient") {
        const std::vector<StabilityReport> reports{mk(1e-3, 2.0)};
        CHECK_THROWS_AS((void)fit_constant(reports, nullptr), InsufficientData);
    }
}

TEST_CASE("experiment guards and stage labels") {
    ExperimentConfig cfg = small_experiment();
    SUBCASE("epsilon beyond the small-data regime") {
        cfg.perturbation.epsilon = 0.2;
        CHECK_THROWS_AS((void)run_experiment(cfg), GridMismatch);
    }
    SUBCASE("weight s must exceed 1/2") {
        cfg.perturbation.weight_s = 0.4;
        CHECK_THROWS_AS((void)run_experiment(cfg), GridMismatch);
    }
    SUBCASE("module failures carry the stage name") {
        cfg.perturbation.epsilon = 1e-3;
        cfg.search.eta_min = -0.5; // invalid region surfaces inside the scatter stage
        try {
            (void)run_experiment(cfg);
            FAIL("expected StageError");
        } catch (const StageError& e) {
            CHECK(e.stage == "scatter");
        }
    }
}
