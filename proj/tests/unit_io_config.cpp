#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <json.hpp>
#include "rgpe/config.hpp"
#include "rgpe/io.hpp"

using namespace rgpe;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    fs::path d = fs::temp_directory_path() / "rgpe_io_test";
    fs::create_directories(d);
    return d;
}

bool error_mentions(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
    } catch (const ValidationError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("snapshot round trip is bit-exact") {
    GridSpec g = make_grid(32, 5.5);
    WaveField u = sample_offset_mixture(g, 1.0);
    u.values(3, 7) = Complex(-0.0, 1e-300);   // corner cases survive too
    fs::path p = temp_dir() / "roundtrip.rgpe";
    write_snapshot(p, u);
    WaveField v = read_snapshot(p);
    CHECK(v.grid.n == 32);
    CHECK(v.grid.l == 5.5);
    CHECK((v.values - u.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("snapshot reader rejects garbage") {
    fs::path p = temp_dir() / "bad.rgpe";
    {
        std::ofstream f(p, std::ios::binary);
        f << "EPGRnothing";
    }
    CHECK_THROWS_AS(read_snapshot(p), ValidationError);
    {
        std::ofstream f(p, std::ios::binary);
        f << "RGPE";   // truncated header
    }
    CHECK_THROWS_AS(read_snapshot(p), ValidationError);
    CHECK_THROWS_AS(read_snapshot(temp_dir() / "missing.rgpe"), ValidationError);
}

TEST_CASE("ledger CSV carries the exact contract header") {
    ConservationLedger led;
    SimulationParams p;
    GridSpec g = make_grid(32, 6.0);
    WaveField u = sample_gaussian(g, 1.0);
    ledger_append(led, u, 0.0, p);
    ledger_append(led, u, 0.25, p);
    fs::path path = temp_dir() / "ledger.csv";
    write_ledger_csv(path, led);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "t,mass,e0,lz,j_sq,h_sq,hist,pc_h_residual,pc_j_residual");
    int rows = 0;
    std::string line;
    while (std::getline(f, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("verification report JSON is machine-readable") {
    std::vector<CheckResult> rows{{"oracle", "unitarity", 1e-9, 1e-6, true, ""},
                                  {"picard", "contraction", 0.9, 0.5, false, "no contraction"}};
    fs::path p = temp_dir() / "report.json";
    write_report_json(p, rows);
    std::ifstream f(p);
    nlohmann::json j = nlohmann::json::parse(f);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["suite"] == "oracle");
    CHECK(j[0]["pass"] == true);
    CHECK(j[1]["note"] == "no contraction");
    CHECK(j[1]["tolerance"] == 0.5);

    std::string table = render_report_table(rows);
    CHECK(table.find("unitarity") != std::string::npos);
    CHECK(table.find("FAIL") != std::string::npos);
}

TEST_CASE("content hash: FNV-1a reference vectors") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("a") == "af63dc4c8601ec8c");
    CHECK(content_hash("foobar") == "85944171f73967e8");
}

TEST_CASE("trajectory directory layout") {
    GridSpec g = make_grid(16, 4.0);
    SimulationParams p;
    WaveField u = sample_gaussian(g, 1.0);
    EvolveConfig c;
    c.dt = 1e-3;
    c.t_end = 5e-3;
    c.snapshot_stride = 2;
    Trajectory traj = evolve(u, p, c);
    fs::path dir = temp_dir() / "traj";
    fs::remove_all(dir);
    write_trajectory(dir, traj, R"({"config_hash":"deadbeef"})");
    CHECK(fs::exists(dir / "ledger.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "snapshot_000000.rgpe"));
    std::ifstream f(dir / "manifest.json");
    nlohmann::json m = nlohmann::json::parse(f);
    CHECK(m["config_hash"] == "deadbeef");            // extra fields merged
    CHECK(m["params"]["omega"] == 1.0);
    CHECK(m["times"].size() == traj.times.size());
    CHECK(m["snapshots"].size() == traj.snapshots.size());
    WaveField back = read_snapshot(dir / "snapshot_000000.rgpe");
    CHECK((back.values - traj.snapshots[0].values).abs().maxCoeff() == 0.0);
}

TEST_CASE("empty config text yields the documented defaults") {
    RunConfig c = parse_config("");
    CHECK(c.params.omega == 1.0);
    CHECK(c.params.beta == 1.0);
    CHECK(c.params.sigma == 1.0);
    CHECK(c.grid.n == 128);
    CHECK(c.grid.l == 8.0);
    CHECK(c.evolve.dt == 1e-3);
    CHECK(c.evolve.t_end == doctest::Approx(M_PI / 2));
    CHECK(c.picard.rho == 4.0);
    CHECK(c.picard.t_horizon == 0.1);
    CHECK(c.initial_data.kind == InitialData::Kind::gaussian);
    CHECK(c.suites.empty());
    CHECK(c.output_dir == "out");
    CHECK(c.warnings.empty());
}

TEST_CASE("config parsing: sections, comments, pi tokens") {
    std::string text =
        "# a comment\n"
        "[params]\n"
        "omega = 2.0\n"
        "beta = 0.5\n"
        "sigma = 2\n"
        "initial_data = vortex:2\n"
        "amplitude = 1.5\n"
        "; another comment\n"
        "[grid]\n"
        "n = 100\n"
        "l = 7\n"
        "[evolve]\n"
        "dt = 2e-3\n"
        "t_end = pi/2\n"
        "snapshot_stride = 5\n"
        "[picard]\n"
        "t_horizon = 0.05\n"
        "rho = 6\n"
        "quad_nodes = 32\n"
        "[output]\n"
        "dir = results\n"
        "suites = conservation, picard\n";
    RunConfig c = parse_config(text);
    CHECK(c.params.omega == 2.0);
    CHECK(c.params.sigma == 2.0);
    CHECK(c.initial_data.kind == InitialData::Kind::vortex);
    CHECK(c.initial_data.vortex_m == 2);
    CHECK(c.initial_data.amplitude == 1.5);
    CHECK(c.grid.n == 100);                        // even, fine
    CHECK(c.evolve.t_end == M_PI / 2);             // exact token
    CHECK(c.picard.rho == 6.0);
    CHECK(c.output_dir == "results");
    CHECK(c.suites == std::set<std::string>{"conservation", "picard"});
}

TEST_CASE("config violations carry line numbers and fail hard") {
    CHECK(error_mentions([] { parse_config("[grid]\nn = 101\n"); }, "even"));
    CHECK(error_mentions([] { parse_config("[params]\nomega = 1\nbogus = 2\n"); }, "line 3"));
    CHECK(error_mentions([] { parse_config("[params]\nomega = 1\nbogus = 2\n"); }, "bogus"));
    CHECK(error_mentions([] { parse_config("[nosuch]\nx = 1\n"); }, "unknown section"));
    CHECK(error_mentions([] { parse_config("omega = 1\n"); }, "outside any section"));
    CHECK(error_mentions([] { parse_config("[params]\nomega = 1\nomega = 2\n"); }, "duplicate"));
    CHECK(error_mentions([] { parse_config("[params]\nomega\n"); }, "key=value"));
    CHECK(error_mentions([] { parse_config("[params]\nomega = abc\n"); }, "non-numeric"));
    CHECK(error_mentions([] { parse_config("[evolve]\nt_end = 0\n"); }, "t_end"));
    CHECK(error_mentions([] { parse_config("[evolve]\ndt = 2\n"); }, "dt"));
    CHECK(error_mentions([] { parse_config("[output]\nsuites = nrequired\n"); }, "unknown suite"));
    CHECK(error_mentions(
        [] { parse_config("[params]\ninitial_data = wavelet\n"); }, "initial_data"));
}

TEST_CASE("sigma*omega < 1 parses with the regime warning attached") {
    RunConfig c = parse_config("[params]\nsigma = 0.5\n");
    REQUIRE(c.warnings.size() == 1);
    CHECK(c.warnings[0].find("outside paper regime") != std::string::npos);
}

TEST_CASE("render/parse round trip preserves every field") {
    RunConfig c;
    c.params = SimulationParams{1.3, 0.7, 2.0};
    c.grid = make_grid(96, 7.5);
    c.evolve.dt = 2.5e-3;
    c.evolve.t_end = 1.1;
    c.evolve.snapshot_stride = 7;
    c.evolve.validate(c.params);
    c.picard.t_horizon = 0.2;
    c.picard.rho = 6.0;
    c.picard.quad_nodes = 48;
    c.initial_data.kind = InitialData::Kind::random;
    c.initial_data.seed = 99;
    c.initial_data.amplitude = 0.5;
    c.output_dir = "elsewhere";
    c.suites = {"oracle", "strichartz"};

    RunConfig d = parse_config(render_config(c));
    CHECK(d.params.omega == c.params.omega);
    CHECK(d.params.beta == c.params.beta);
    CHECK(d.params.sigma == c.params.sigma);
    CHECK(d.grid == c.grid);
    CHECK(d.evolve.dt == c.evolve.dt);
    CHECK(d.evolve.t_end == c.evolve.t_end);
    CHECK(d.evolve.snapshot_stride == c.evolve.snapshot_stride);
    CHECK(d.evolve.segment_length == c.evolve.segment_length);
    CHECK(d.picard.t_horizon == c.picard.t_horizon);
    CHECK(d.picard.rho == c.picard.rho);
    CHECK(d.picard.quad_nodes == c.picard.quad_nodes);
    CHECK(d.picard.max_iter == c.picard.max_iter);
    CHECK(d.picard.tol == c.picard.tol);
    CHECK(d.initial_data.kind == c.initial_data.kind);
    CHECK(d.initial_data.seed == c.initial_data.seed);
    CHECK(d.initial_data.amplitude == c.initial_data.amplitude);
    CHECK(d.output_dir == c.output_dir);
    CHECK(d.suites == c.suites);
}

TEST_CASE("initial data realization") {
    GridSpec g = make_grid(32, 6.0);
    InitialData d;
    d.amplitude = 2.0;
    WaveField u = d.realize(g, 1.0);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(2.0).epsilon(1e-12));

    // file-backed data must sit on the configured grid
    fs::path p = temp_dir() / "init.rgpe";
    write_snapshot(p, sample_gaussian(g, 1.0));
    InitialData f;
    f.kind = InitialData::Kind::file;
    f.file_path = p.string();
    CHECK_NOTHROW(f.realize(g, 1.0));
    GridSpec other = make_grid(64, 6.0);
    CHECK_THROWS_AS(f.realize(other, 1.0), ValidationError);
}
