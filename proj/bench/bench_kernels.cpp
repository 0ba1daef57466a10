// Times the OpenMP kernels against their serial reference twins and checks
// they produce the same numbers.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nlsf/dressing.hpp"
#include "nlsf/evolver.hpp"
#include "nlsf/scattering.hpp"
#include "nlsf/seeds.hpp"
#include "nlsf/solitons.hpp"

using namespace nlsf;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-6.2f   max|diff| %.2e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, diff);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    // vacuum dressing of a 3-soliton on a large grid
    {
        const Grid g = Grid::centered(120.0, 1 << 16);
        const std::vector<SolitonParams> p{
            {0.5, 0.8, -8.0, 0.0}, {0.0, 1.1, 0.0, 0.4}, {-0.5, 1.4, 8.0, 0.9}};
        const auto seeds = vacuum_seed(p, 0.3, g);
        const ComplexField q0 = zero_field(g, 0.3);

        double t0 = now_ms();
        const DressResult serial = ref::dress(q0, seeds);
        double t1 = now_ms();
        const DressResult parallel = dress(q0, seeds);
        double t2 = now_ms();
        double diff = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            diff = std::max(diff, std::abs(serial.q.values[i] - parallel.q.values[i]));
        row("dress (n=3, 65536 pts)", t1 - t0, t2 - t1, diff);
    }

    // |a(z)| scan over a spectral-plane region
    {
        const Grid g = Grid::centered(80.0, 4096);
        const ComplexField q =
            n_soliton(std::vector<SolitonParams>{{1.0, 1.0, 0.0, 0.0}, {-1.0, 1.5, 0.0, 0.0}},
                      g, 0.0);
        SearchRegion reg;
        reg.scan_nx = 24;
        reg.scan_ny = 24;
        double t0 = now_ms();
        const auto serial = ref::scan_abs_a(q, reg);
        double t1 = now_ms();
        const auto parallel = scan_abs_a(q, reg);
        double t2 = now_ms();
        double diff = 0.0;
        for (std::size_t i = 0; i < serial.size(); ++i)
            diff = std::max(diff, std::abs(serial[i] - parallel[i]));
        row("|a| scan (24x24, N=4096)", t1 - t0, t2 - t1, diff);
    }

    // split-step evolution (pointwise stages are parallel; FFT serial)
    {
        EvolveConfig cfg;
        cfg.length = 160.0;
        cfg.n = 1 << 13;
        cfg.dt = 1e-3;
        cfg.t_end = 0.5;
        const Grid g = Grid::centered(cfg.length, cfg.n);
        const ComplexField q0 =
            n_soliton(std::vector<SolitonParams>{{0.3, 0.9, 0.0, 0.0}}, g, 0.0);
        const std::vector<double> times{0.5};

#ifdef _OPENMP
        const int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        double t0 = now_ms();
        const Trajectory serial = evolve(q0, cfg, times);
        double t1 = now_ms();
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        const Trajectory parallel = evolve(q0, cfg, times);
        double t2 = now_ms();
        double diff = 0.0;
        for (std::size_t i = 0; i < cfg.n; ++i)
            diff = std::max(diff, std::abs(serial.samples[0].values[i] -
                                           parallel.samples[0].values[i]));
        row("evolve (N=8192, 500 steps)", t1 - t0, t2 - t1, diff);
    }
    return 0;
}
