#include "nlsf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "nlsf/dressing.hpp"
#include "nlsf/errors.hpp"
#include "nlsf/evolver.hpp"
#include "nlsf/fieldfile.hpp"
#include "nlsf/runconfig.hpp"
#include "nlsf/seeds.hpp"
#include "nlsf/stability.hpp"

namespace nlsf {

namespace {

std::vector<SolitonParams> zip_params(const std::vector<double>& eta,
                                      std::vector<double> xi, std::vector<double> x0,
                                      std::vector<double> theta) {
    const std::size_t n = eta.size();
    if (n == 0) throw GridMismatch("at least one --eta is required");
    const auto fill = [n](std::vector<double>& v, const char* name) {
        if (v.empty()) v.assign(n, 0.0);
        if (v.size() != n)
            throw GridMismatch(std::string("count of ") + name + " does not match --eta");
    };
    fill(xi, "--xi");
    fill(x0, "--x0");
    fill(theta, "--theta");
    std::vector<SolitonParams> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = {xi[j], eta[j], x0[j], theta[j]};
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GridMismatch("cannot open output file " + path);
    out << std::setprecision(17);
    return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(path);
        if (!out) throw GridMismatch("cannot open output file " + path);
        out << j.dump(2) << "\n";
    }
}

void write_series_csv(const std::string& path, const StabilityReport& rep) {
    std::ofstream out = open_out(path);
    out << "t,distance,l2_of_q,boundary_level\n";
    for (const DistanceSample& s : rep.distance_series)
        out << s.t << "," << s.distance << "," << s.l2 << "," << s.edge << "\n";
}

struct SolitonArgs {
    std::vector<double> eta, xi, x0, theta;
    std::size_t grid_n = 2048;
    double grid_l = 80.0;
    double t = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eta", eta, "amplitude parameter, one per soliton")->required();
        cmd->add_option("--xi", xi, "velocity parameter, one per soliton");
        cmd->add_option("--x0", x0, "position offset, one per soliton");
        cmd->add_option("--theta", theta, "phase, one per soliton");
        cmd->add_option("--grid-n", grid_n, "sample count");
        cmd->add_option("--grid-l", grid_l, "domain length");
        cmd->add_option("--t", t, "time stamp");
    }
    std::vector<SolitonParams> params() const { return zip_params(eta, xi, x0, theta); }
};

int run_soliton(const SolitonArgs& args, const std::string& out_path,
                const std::string& surface_path, double t0, double t1, double dt_out) {
    const auto params = args.params();
    const Grid grid = Grid::centered(args.grid_l, args.grid_n);
    if (!surface_path.empty()) {
        std::ofstream out = open_out(surface_path);
        out << "x,t,abs_q2\n";
        for (double t = t0; t <= t1 + 1e-12; t += dt_out) {
            const ComplexField q = n_soliton(params, grid, t);
            for (std::size_t i = 0; i < q.size(); ++i)
                out << q.x(i) << "," << t << "," << std::norm(q.values[i]) << "\n";
        }
    }
    if (!out_path.empty())
        write_field(out_path, n_soliton(params, grid, args.t));
    return 0;
}

int run_dress(const SolitonArgs& args, const std::string& in_path,
              const std::string& out_path) {
    const auto params = args.params();
    ComplexField q0;
    if (in_path.empty())
        q0 = zero_field(Grid::centered(args.grid_l, args.grid_n), args.t);
    else
        q0 = read_field(in_path);
    const auto seeds = in_path.empty() ? vacuum_seed(params, args.t, q0.grid())
                                       : jost_seed(q0, params, args.t);
    write_field(out_path, dress(q0, seeds).q);
    return 0;
}

int run_evolve(const std::string& in_path, const std::string& out_path,
               const std::string& series_path, double t_end, double dt,
               double sample_every, bool no_dealias) {
    const ComplexField q0 = read_field(in_path);
    EvolveConfig cfg;
    cfg.n = q0.size();
    cfg.length = q0.dx * static_cast<double>(q0.size());
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.dealias = !no_dealias;
    std::vector<double> times;
    for (double t = 0.0; t <= t_end + 1e-9; t += sample_every) times.push_back(t);
    if (times.empty() || times.back() < t_end - 1e-9) times.push_back(t_end);
    const Trajectory traj = evolve(q0, cfg, times);
    if (!series_path.empty()) {
        std::ofstream out = open_out(series_path);
        out << "t,l2,boundary_level\n";
        for (const ComplexField& f : traj.samples) {
            double edge = 0.0;
            const double m = max_abs(f);
            for (std::size_t i = 0; i < 4; ++i)
                edge = std::max({edge, std::abs(f.values[i]),
                                 std::abs(f.values[f.size() - 1 - i])});
            out << f.t << "," << l2_norm(f) << "," << (m > 0 ? edge / m : 0.0) << "\n";
        }
    }
    if (!out_path.empty()) write_field(out_path, traj.samples.back());
    return 0;
}

SearchRegion region_from(const std::vector<double>& region4) {
    SearchRegion region;
    region.xi_min = region4[0];
    region.xi_max = region4[1];
    region.eta_min = region4[2];
    region.eta_max = region4[3];
    return region;
}

int run_scatter(const std::string& in_path, const std::vector<double>& region4,
                int scan_nx, int scan_ny, bool no_refine, const std::string& out_path) {
    ComplexField q = read_field(in_path);
    if (!no_refine) q = refine_to_dx(q, 0.01); // a(z) is O(dx^4); keep floors ~1e-7
    SearchRegion region = region_from(region4);
    region.scan_nx = scan_nx;
    region.scan_ny = scan_ny;
    const ScatteringData data = scatter(q, region);
    write_json(out_path, scattering_to_json(data));
    return 0;
}

int run_undress(const std::string& in_path, const std::vector<double>& region4,
                const std::string& out_path) {
    const ComplexField q = refine_to_dx(read_field(in_path), 0.005);
    const SearchRegion region = region_from(region4);
    const auto eigenvalues = find_eigenvalues(q, region);
    std::vector<ZsVectorField> states;
    states.reserve(eigenvalues.size());
    for (const SpectralPoint& zj : eigenvalues) states.push_back(bound_state(q, zj));
    write_field(out_path, undress(q, states));
    return 0;
}

int run_stability(const std::string& config_path, const std::string& out_path,
                  const std::string& series_path) {
    const ExperimentConfig cfg = load_experiment_config(config_path);
    const StabilityReport rep = run_experiment(cfg);
    write_json(out_path, report_to_json(rep));
    if (!series_path.empty()) write_series_csv(series_path, rep);
    return 0;
}

int run_sweep(const std::string& config_path, const std::vector<double>& epsilons,
              const std::string& out_path) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    std::vector<StabilityReport> reports;
    nlohmann::json all = nlohmann::json::array();
    for (double eps : epsilons) {
        cfg.perturbation.epsilon = eps;
        reports.push_back(run_experiment(cfg));
        all.push_back(report_to_json(reports.back()));
    }
    bool nonuniform = false;
    const double c = fit_constant(reports, &nonuniform);
    write_json(out_path, nlohmann::json{{"reports", all},
                                        {"constant", c},
                                        {"nonuniform", nonuniform}});
    return 0;
}

} // namespace

int command_dispatch(int argc, const char* const* argv) {
    if (const char* threads = std::getenv("NLSF_THREADS")) {
#ifdef _OPENMP
        const int nt = std::atoi(threads);
        if (nt > 0) omp_set_num_threads(nt);
#else
        (void)threads;
#endif
    }

    CLI::App app{"multi-soliton construction, scattering and stability experiments "
                 "for the cubic NLS equation"};
    app.require_subcommand(1);

    // soliton
    auto* soliton = app.add_subcommand("soliton", "emit an n-soliton field or (x,t) surface");
    SolitonArgs sargs;
    sargs.attach(soliton);
    std::string soliton_out, surface_out;
    double t0 = 0.0, t1 = 1.0, dt_out = 0.1;
    soliton->add_option("--out", soliton_out, "output field file");
    soliton->add_option("--surface", surface_out, "output surface CSV (x,t,|q|^2)");
    soliton->add_option("--t0", t0, "surface start time");
    soliton->add_option("--t1", t1, "surface end time");
    soliton->add_option("--dt-out", dt_out, "surface time step");

    // dress
    auto* dress_cmd = app.add_subcommand("dress", "dress a background field with solitons");
    SolitonArgs dargs;
    dargs.attach(dress_cmd);
    std::string dress_in, dress_out;
    dress_cmd->add_option("--in", dress_in, "background field (vacuum when omitted)");
    dress_cmd->add_option("--out", dress_out, "output field file")->required();

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "integrate the cubic NLS");
    std::string evolve_in, evolve_out, evolve_series;
    double t_end = 10.0, dt = 1e-3, sample_every = 0.5;
    bool no_dealias = false;
    evolve_cmd->add_option("--in", evolve_in, "initial field")->required();
    evolve_cmd->add_option("--t-end", t_end, "final time");
    evolve_cmd->add_option("--dt", dt, "time step");
    evolve_cmd->add_option("--sample-every", sample_every, "series cadence");
    evolve_cmd->add_option("--out", evolve_out, "final field file");
    evolve_cmd->add_option("--series", evolve_series, "time series CSV");
    evolve_cmd->add_flag("--no-dealias", no_dealias, "disable the 2/3 rule");

    // scatter
    auto* scatter_cmd = app.add_subcommand("scatter", "direct scattering of a field");
    std::string scatter_in, scatter_out;
    std::vector<double> region4{-2.0, 2.0, 0.1, 2.5};
    int scan_nx = 40, scan_ny = 40;
    scatter_cmd->add_option("--in", scatter_in, "input field")->required();
    scatter_cmd->add_option("--region", region4, "xi_min xi_max eta_min eta_max")
        ->expected(4);
    scatter_cmd->add_option("--scan-nx", scan_nx, "scan resolution in xi");
    scatter_cmd->add_option("--scan-ny", scan_ny, "scan resolution in eta");
    bool no_refine_scatter = false;
    scatter_cmd->add_flag("--no-refine", no_refine_scatter,
                          "scatter on the stored grid without spectral refinement");
    scatter_cmd->add_option("--out", scatter_out, "output JSON ('-' for stdout)");

    // undress
    auto* undress_cmd = app.add_subcommand("undress", "remove the bound states of a field");
    std::string undress_in, undress_out;
    std::vector<double> uregion4{-2.0, 2.0, 0.1, 2.5};
    undress_cmd->add_option("--in", undress_in, "input field")->required();
    undress_cmd->add_option("--region", uregion4, "xi_min xi_max eta_min eta_max")
        ->expected(4);
    undress_cmd->add_option("--out", undress_out, "output field file")->required();

    // stability
    auto* stab_cmd = app.add_subcommand("stability", "run one orbital-stability experiment");
    std::string stab_config, stab_out, stab_series;
    stab_cmd->add_option("--config", stab_config, "experiment config JSON")->required();
    stab_cmd->add_option("--out", stab_out, "report JSON ('-' for stdout)");
    stab_cmd->add_option("--series", stab_series, "distance series CSV");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "epsilon sweep with constant fit");
    std::string sweep_config, sweep_out;
    std::vector<double> sweep_eps;
    sweep_cmd->add_option("--config", sweep_config, "experiment config JSON")->required();
    sweep_cmd->add_option("--epsilon", sweep_eps, "epsilon values")->required();
    sweep_cmd->add_option("--out", sweep_out, "summary JSON ('-' for stdout)");

    try {
        app.parse(argc, const_cast<char**>(argv));
        if (*soliton)
            return run_soliton(sargs, soliton_out, surface_out, t0, t1, dt_out);
        if (*dress_cmd) return run_dress(dargs, dress_in, dress_out);
        if (*evolve_cmd)
            return run_evolve(evolve_in, evolve_out, evolve_series, t_end, dt,
                              sample_every, no_dealias);
        if (*scatter_cmd)
            return run_scatter(scatter_in, region4, scan_nx, scan_ny, no_refine_scatter,
                               scatter_out);
        if (*undress_cmd) return run_undress(undress_in, uregion4, undress_out);
        if (*stab_cmd) return run_stability(stab_config, stab_out, stab_series);
        if (*sweep_cmd) return run_sweep(sweep_config, sweep_eps, sweep_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const GridMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace nlsf
