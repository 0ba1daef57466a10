#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nlsf/cli.hpp"
#include "nlsf/errors.hpp"
#include "nlsf/fieldfile.hpp"
#include "nlsf/runconfig.hpp"
#include "nlsf/solitons.hpp"

using namespace nlsf;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/nlsf_test_" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"nlsf"};
    argv.insert(argv.end(), args.begin(), args.end());
    return command_dispatch(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("field files round trip bit-exactly") {
    const Grid g = Grid::centered(40.0, 512);
    ComplexField q = zero_field(g, 1.25);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto& v : q.values) v = cplx(u(rng), u(rng));

    const std::string path = tmp_path("roundtrip.nlsf");
    write_field(path, q);
    const ComplexField back = read_field(path);
    CHECK(back.x0 == q.x0);
    CHECK(back.dx == q.dx);
    CHECK(back.t == q.t);
    REQUIRE(back.size() == q.size());
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(back.values[i] == q.values[i]);

    // writing the read-back field reproduces the file byte for byte
    const std::string path2 = tmp_path("roundtrip2.nlsf");
    write_field(path2, back);
    CHECK(slurp(path) == slurp(path2));

    // header: magic, version 1, N as u64, then three f64
    const std::string bytes = slurp(path);
    REQUIRE(bytes.size() == 40 + 16 * q.size());
    CHECK(bytes.substr(0, 4) == "NLSF");

    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("field file rejects corruption") {
    const std::string path = tmp_path("bad.nlsf");
    ComplexField q = zero_field(Grid::centered(10.0, 16), 0.0);
    write_field(path, q);

    SUBCASE("bad magic") {
        std::string bytes = slurp(path);
        bytes[0] = 'X';
        std::ofstream(path, std::ios::binary) << bytes;
        CHECK_THROWS_AS((void)read_field(path), GridMismatch);
    }
    SUBCASE("truncated payload") {
        std::string bytes = slurp(path);
        bytes.resize(bytes.size() - 8);
        std::ofstream(path, std::ios::binary) << bytes;
        CHECK_THROWS_AS((void)read_field(path), GridMismatch);
    }
    std::remove(path.c_str());
}

TEST_CASE("experiment config parsing") {
    using nlohmann::json;
    const json good{
        {"solitons", {{{"xi", 1.0}, {"eta", 1.0}}, {{"xi", -1.0}, {"eta", 1.5}}}},
        {"perturbation",
         {{"shape", "gaussian"}, {"epsilon", 1e-3}, {"weight_s", 1.0}, {"seed", 5}}},
        {"evolve", {{"grid_n", 8192}, {"grid_l", 256.0}, {"dt", 1e-3}, {"t_end", 20.0}}},
        {"search", {{"xi_min", -2.0}, {"xi_max", 2.0}, {"eta_min", 0.1}, {"eta_max", 2.5}}},
        {"sample_times", {0.0, 0.5, 1.0}},
        {"undress", true}};
    const ExperimentConfig cfg = parse_experiment_config(good);
    CHECK(cfg.base.size() == 2);
    CHECK(cfg.base[1].eta == 1.5);
    CHECK(cfg.perturbation.epsilon == 1e-3);
    CHECK(cfg.evolve.n == 8192);
    CHECK(cfg.sample_times.size() == 3);
    CHECK(cfg.do_undress);

    SUBCASE("unknown top-level key") {
        json bad = good;
        bad["solitonz"] = json::array();
        CHECK_THROWS_AS((void)parse_experiment_config(bad), GridMismatch);
    }
    SUBCASE("unknown nested key") {
        json bad = good;
        bad["perturbation"]["amplitude"] = 0.1;
        CHECK_THROWS_AS((void)parse_experiment_config(bad), GridMismatch);
    }
    SUBCASE("missing eta") {
        json bad = good;
        bad["solitons"][0].erase("eta");
        CHECK_THROWS_AS((void)parse_experiment_config(bad), GridMismatch);
    }
    SUBCASE("bad shape") {
        json bad = good;
        bad["perturbation"]["shape"] = "sinusoid";
        CHECK_THROWS_AS((void)parse_experiment_config(bad), GridMismatch);
    }
}

TEST_CASE("scattering data JSON round trip") {
    ScatteringData data;
    data.grid = Grid::centered(80.0, 2048);
    data.t = 0.25;
    data.eigenvalues = {SpectralPoint{1.0, 1.0}, SpectralPoint{-1.0, 1.5}};
    data.norming = {cplx(-0.5, 0.25), cplx(2.0, -1.0)};
    data.a_samples = {{cplx(0.0, 1.0), cplx(0.3, 0.1)}};

    const ScatteringData back = scattering_from_json(scattering_to_json(data));
    REQUIRE(back.eigenvalues.size() == 2);
    CHECK(back.eigenvalues[0].xi == 1.0);
    CHECK(back.eigenvalues[1].eta == 1.5);
    CHECK(back.norming[0] == data.norming[0]);
    CHECK(back.grid.n == data.grid.n);
    CHECK(back.grid.dx == data.grid.dx);
    CHECK(back.t == data.t);
    CHECK(back.a_samples.size() == 1);
}

TEST_CASE("cli: soliton emits the closed form, scatter recovers the spectrum") {
    const std::string field_path = tmp_path("cli_field.nlsf");
    const int rc = run_cli({"soliton", "--eta", "1", "--eta", "1.5", "--xi", "1", "--xi",
                            "-1", "--grid-n", "2048", "--grid-l", "80", "--t", "0",
                            "--out", field_path.c_str()});
    REQUIRE(rc == 0);

    const ComplexField q = read_field(field_path);
    REQUIRE(q.size() == 2048);
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        worst = std::max(worst, std::abs(q.values[i] - two_soliton({1.0, 1.0, 0.0, 0.0},
                                                                   {-1.0, 1.5, 0.0, 0.0},
                                                                   q.x(i), 0.0)));
    CHECK(worst <= 1e-10);

    const std::string json_path = tmp_path("cli_scatter.json");
    const int rc2 = run_cli({"scatter", "--in", field_path.c_str(), "--region", "-2", "2",
                             "0.1", "2.5", "--out", json_path.c_str()});
    REQUIRE(rc2 == 0);
    nlohmann::json j;
    std::ifstream(json_path) >> j;
    const ScatteringData data = scattering_from_json(j);
    REQUIRE(data.eigenvalues.size() == 2);
    CHECK(std::abs(data.eigenvalues[0].z() - cplx(-1.0, 1.5)) <= 1e-6);
    CHECK(std::abs(data.eigenvalues[1].z() - cplx(1.0, 1.0)) <= 1e-6);

    // byte-identical on repeated invocation
    const std::string json_path2 = tmp_path("cli_scatter2.json");
    REQUIRE(run_cli({"scatter", "--in", field_path.c_str(), "--region", "-2", "2", "0.1",
                     "2.5", "--out", json_path2.c_str()}) == 0);
    CHECK(slurp(json_path) == slurp(json_path2));

    std::remove(field_path.c_str());
    std::remove(json_path.c_str());
    std::remove(json_path2.c_str());
}

TEST_CASE("cli: validation failures exit 1, numerical failures exit 2") {
    CHECK(run_cli({"soliton", "--eta", "1", "--xi", "1", "--xi", "-1", "--out",
                   tmp_path("zip.nlsf").c_str()}) == 1); // count mismatch
    CHECK(run_cli({"scatter", "--in", tmp_path("missing.nlsf").c_str()}) == 1);
    CHECK(run_cli({"soliton", "--eta", "1", "--eta", "1", "--out",
                   tmp_path("dup.nlsf").c_str()}) == 1); // coinciding pairs

    // numerical-stage failure: the nonlinear rotation guard trips in evolve
    const std::string field_path = tmp_path("cfl.nlsf");
    REQUIRE(run_cli({"soliton", "--eta", "1.5", "--grid-n", "2048", "--grid-l", "80",
                     "--out", field_path.c_str()}) == 0);
    CHECK(run_cli({"evolve", "--in", field_path.c_str(), "--t-end", "1", "--dt", "0.5",
                   "--out", tmp_path("cfl_out.nlsf").c_str()}) == 2);
    std::remove(field_path.c_str());
}

TEST_CASE("cli: dress, evolve, undress pipeline") {
    const std::string soliton_path = tmp_path("pipe_soliton.nlsf");
    const std::string dressed_path = tmp_path("pipe_dressed.nlsf");
    const std::string evolved_path = tmp_path("pipe_evolved.nlsf");
    const std::string series_path = tmp_path("pipe_series.csv");
    const std::string stripped_path = tmp_path("pipe_stripped.nlsf");

    // vacuum dress == soliton
    REQUIRE(run_cli({"dress", "--eta", "0.8", "--xi", "0.2", "--grid-n", "2048", "--grid-l",
                     "80", "--out", dressed_path.c_str()}) == 0);
    REQUIRE(run_cli({"soliton", "--eta", "0.8", "--xi", "0.2", "--grid-n", "2048",
                     "--grid-l", "80", "--out", soliton_path.c_str()}) == 0);
    CHECK(slurp(dressed_path) == slurp(soliton_path));

    // short evolution emits the series and the final field
    REQUIRE(run_cli({"evolve", "--in", dressed_path.c_str(), "--t-end", "0.5", "--dt",
                     "1e-3", "--sample-every", "0.25", "--out", evolved_path.c_str(),
                     "--series", series_path.c_str()}) == 0);
    const ComplexField evolved = read_field(evolved_path);
    CHECK(evolved.t == doctest::Approx(0.5));
    std::ifstream series(series_path);
    std::string line;
    std::getline(series, line);
    CHECK(line == "t,l2,boundary_level");
    int rows = 0;
    while (std::getline(series, line)) ++rows;
    CHECK(rows == 3);

    // undressing the soliton leaves a small residual
    REQUIRE(run_cli({"undress", "--in", soliton_path.c_str(), "--region", "-1", "1", "0.2",
                     "1.5", "--out", stripped_path.c_str()}) == 0);
    CHECK(l2_norm(read_field(stripped_path)) <= 1e-6);

    for (const auto& p : {soliton_path, dressed_path, evolved_path, series_path, stripped_path})
        std::remove(p.c_str());
}

TEST_CASE("cli: stability and sweep run a miniature experiment deterministically") {
    using nlohmann::json;
    const json config{
        {"solitons", {{{"xi", 0.3}, {"eta", 0.7}, {"x0", 0.5}, {"theta", 0.4}}}},
        {"perturbation",
         {{"shape", "random-band"}, {"epsilon", 1e-3}, {"weight_s", 1.0}, {"seed", 11}}},
        {"evolve", {{"grid_n", 2048}, {"grid_l", 80.0}, {"dt", 2e-3}, {"t_end", 1.0}}},
        {"search",
         {{"xi_min", -1.0}, {"xi_max", 1.0}, {"eta_min", 0.2}, {"eta_max", 1.5},
          {"scan_nx", 16}, {"scan_ny", 16}}},
        {"sample_times", {0.0, 0.5, 1.0}},
        {"undress", false}};
    const std::string cfg_path = tmp_path("mini_config.json");
    std::ofstream(cfg_path) << config.dump(2);

    const std::string rep_path = tmp_path("mini_report.json");
    const std::string rep2_path = tmp_path("mini_report2.json");
    const std::string ser_path = tmp_path("mini_series.csv");
    REQUIRE(run_cli({"stability", "--config", cfg_path.c_str(), "--out", rep_path.c_str(),
                     "--series", ser_path.c_str()}) == 0);
    REQUIRE(run_cli({"stability", "--config", cfg_path.c_str(), "--out",
                     rep2_path.c_str()}) == 0);
    CHECK(slurp(rep_path) == slurp(rep2_path)); // byte-identical reruns

    json rep;
    std::ifstream(rep_path) >> rep;
    CHECK(rep.at("epsilon").get<double>() == 1e-3);
    CHECK(rep.at("param_deviation").get<double>() <= 1e-2);
    CHECK(rep.at("sup_distance").get<double>() <= 1e-2);
    CHECK(rep.at("distance_series").size() == 3);

    std::ifstream series(ser_path);
    std::string line;
    std::getline(series, line);
    CHECK(line == "t,distance,l2_of_q,boundary_level");

    const std::string sweep_path = tmp_path("mini_sweep.json");
    REQUIRE(run_cli({"sweep", "--config", cfg_path.c_str(), "--epsilon", "1e-3",
                     "--epsilon", "3e-3", "--out", sweep_path.c_str()}) == 0);
    json sweep;
    std::ifstream(sweep_path) >> sweep;
    CHECK(sweep.at("reports").size() == 2);
    CHECK(sweep.at("constant").get<double>() < 100.0);
    CHECK(sweep.contains("nonuniform"));

    for (const auto& p : {cfg_path, rep_path, rep2_path, ser_path, sweep_path})
        std::remove(p.c_str());
}

TEST_CASE("cli: surface CSV is t-major with x fastest") {
    const std::string csv_path = tmp_path("surface.csv");
    REQUIRE(run_cli({"soliton", "--eta", "0.5", "--grid-n", "16", "--grid-l", "20", "--t0",
                     "0", "--t1", "0.2", "--dt-out", "0.1", "--surface",
                     csv_path.c_str()}) == 0);
    std::ifstream in(csv_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,t,abs_q2");
    std::vector<std::pair<double, double>> xt;
    std::string line;
    while (std::getline(in, line)) {
        double x, t, v;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &v) == 3);
        xt.emplace_back(t, x);
    }
    CHECK(xt.size() == 16 * 3);
    CHECK(std::is_sorted(xt.begin(), xt.end()));
    std::remove(csv_path.c_str());
}
