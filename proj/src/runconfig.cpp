#include "nlsf/runconfig.hpp"

#include <fstream>
#include <set>

#include "nlsf/errors.hpp"

namespace nlsf {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key))
            throw GridMismatch(std::string("config: unknown key '") + key + "' in " + where);
}

double num(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

} // namespace

ExperimentConfig parse_experiment_config(const json& j) {
    reject_unknown(j, {"solitons", "perturbation", "evolve", "search", "sample_times", "undress"},
                   "config");
    ExperimentConfig cfg;

    if (!j.contains("solitons") || !j.at("solitons").is_array() || j.at("solitons").empty())
        throw GridMismatch("config: 'solitons' must be a non-empty array");
    for (const json& s : j.at("solitons")) {
        reject_unknown(s, {"xi", "eta", "x0", "theta"}, "solitons[]");
        if (!s.contains("eta")) throw GridMismatch("config: soliton needs 'eta'");
        cfg.base.push_back(SolitonParams{num(s, "xi", 0.0), s.at("eta").get<double>(),
                                         num(s, "x0", 0.0), num(s, "theta", 0.0)});
    }

    if (j.contains("perturbation")) {
        const json& p = j.at("perturbation");
        reject_unknown(p,
                       {"shape", "epsilon", "weight_s", "seed", "center", "width",
                        "modulation", "band_lo", "band_hi"},
                       "perturbation");
        Perturbation& pt = cfg.perturbation;
        if (p.contains("shape")) {
            const std::string shape = p.at("shape").get<std::string>();
            if (shape == "gaussian") pt.shape = Perturbation::Shape::gaussian;
            else if (shape == "random-band") pt.shape = Perturbation::Shape::random_band;
            else throw GridMismatch("config: perturbation shape must be gaussian or random-band");
        }
        pt.epsilon = num(p, "epsilon", 0.0);
        pt.weight_s = num(p, "weight_s", 1.0);
        if (p.contains("seed")) pt.seed = p.at("seed").get<unsigned>();
        pt.center = num(p, "center", 0.0);
        pt.width = num(p, "width", 1.0);
        pt.modulation = num(p, "modulation", 0.0);
        pt.band_lo = num(p, "band_lo", 0.25);
        pt.band_hi = num(p, "band_hi", 2.0);
    }

    if (j.contains("evolve")) {
        const json& e = j.at("evolve");
        reject_unknown(e, {"grid_n", "grid_l", "dt", "t_end", "dealias", "boundary_tol"},
                       "evolve");
        if (e.contains("grid_n")) cfg.evolve.n = e.at("grid_n").get<std::size_t>();
        cfg.evolve.length = num(e, "grid_l", cfg.evolve.length);
        cfg.evolve.dt = num(e, "dt", cfg.evolve.dt);
        cfg.evolve.t_end = num(e, "t_end", cfg.evolve.t_end);
        if (e.contains("dealias")) cfg.evolve.dealias = e.at("dealias").get<bool>();
        cfg.evolve.boundary_tol = num(e, "boundary_tol", cfg.evolve.boundary_tol);
    }

    if (j.contains("search")) {
        const json& s = j.at("search");
        reject_unknown(s, {"xi_min", "xi_max", "eta_min", "eta_max", "scan_nx", "scan_ny"},
                       "search");
        cfg.search.xi_min = num(s, "xi_min", cfg.search.xi_min);
        cfg.search.xi_max = num(s, "xi_max", cfg.search.xi_max);
        cfg.search.eta_min = num(s, "eta_min", cfg.search.eta_min);
        cfg.search.eta_max = num(s, "eta_max", cfg.search.eta_max);
        if (s.contains("scan_nx")) cfg.search.scan_nx = s.at("scan_nx").get<int>();
        if (s.contains("scan_ny")) cfg.search.scan_ny = s.at("scan_ny").get<int>();
    }

    if (j.contains("sample_times"))
        cfg.sample_times = j.at("sample_times").get<std::vector<double>>();
    if (j.contains("undress")) cfg.do_undress = j.at("undress").get<bool>();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GridMismatch("config: cannot open " + path);
    json j;
    in >> j;
    return parse_experiment_config(j);
}

json report_to_json(const StabilityReport& rep) {
    json solitons = json::array();
    for (const SolitonParams& p : rep.recovered)
        solitons.push_back({{"xi", p.xi}, {"eta", p.eta}, {"x0", p.x0}, {"theta", p.theta}});
    json series = json::array();
    for (const DistanceSample& s : rep.distance_series) series.push_back({s.t, s.distance});
    json j{{"epsilon", rep.epsilon},
           {"recovered", solitons},
           {"param_deviation", rep.param_deviation},
           {"distance_series", series},
           {"sup_distance", rep.sup_distance},
           {"constant_estimate", rep.constant_estimate},
           {"l2_drift", rep.l2_drift},
           {"boundary_level", rep.boundary_level}};
    if (rep.residual_eigenvalues >= 0) {
        j["residual_norm"] = rep.residual_norm;
        j["residual_eigenvalues"] = rep.residual_eigenvalues;
    }
    return j;
}

json scattering_to_json(const ScatteringData& data) {
    json eigs = json::array();
    for (const SpectralPoint& z : data.eigenvalues) eigs.push_back({z.xi, z.eta});
    json norming = json::array();
    for (const cplx& c : data.norming) norming.push_back({c.real(), c.imag()});
    json samples = json::array();
    for (const auto& [z, a] : data.a_samples)
        samples.push_back({z.real(), z.imag(), a.real(), a.imag()});
    return json{{"eigenvalues", eigs},
                {"norming", norming},
                {"a_samples", samples},
                {"tolerances", {{"abs_a", 1e-10}, {"eta_floor", data.eta_floor}}},
                {"grid", {{"n", data.grid.n}, {"x0", data.grid.x0}, {"dx", data.grid.dx}, {"t", data.t}}}};
}

ScatteringData scattering_from_json(const json& j) {
    ScatteringData data;
    for (const json& e : j.at("eigenvalues"))
        data.eigenvalues.push_back(SpectralPoint{e.at(0).get<double>(), e.at(1).get<double>()});
    for (const json& c : j.at("norming"))
        data.norming.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    if (j.contains("a_samples"))
        for (const json& s : j.at("a_samples"))
            data.a_samples.emplace_back(cplx(s.at(0).get<double>(), s.at(1).get<double>()),
                                        cplx(s.at(2).get<double>(), s.at(3).get<double>()));
    const json& g = j.at("grid");
    data.grid.n = g.at("n").get<std::size_t>();
    data.grid.x0 = g.at("x0").get<double>();
    data.grid.dx = g.at("dx").get<double>();
    data.t = g.at("t").get<double>();
    if (j.contains("tolerances") && j.at("tolerances").contains("eta_floor"))
        data.eta_floor = j.at("tolerances").at("eta_floor").get<double>();
    return data;
}

} // namespace nlsf
