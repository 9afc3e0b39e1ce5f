#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <json.hpp>
#include "rgpe/cli.hpp"
#include "rgpe/propagator.hpp"

using namespace rgpe;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("rgpe");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / "rgpe_cli_test";
    fs::create_directories(d);
    return d;
}

fs::path write_config(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream f(p);
    f << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::string kTinyRun =
    "[params]\nomega = 1\nbeta = 1\nsigma = 1\n"
    "[grid]\nn = 32\nl = 6\n"
    "[evolve]\ndt = 1e-3\nt_end = 0.02\nsnapshot_stride = 5\n";

} // namespace

TEST_CASE("help and argument errors follow the exit contract") {
    CliRun help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("run") != std::string::npos);
    CHECK(help.out.find("verify") != std::string::npos);
    CHECK(help.out.find("oracle") != std::string::npos);

    CliRun none = invoke({});
    CHECK(none.code == 2);
    CHECK(none.err.find("usage") != std::string::npos);

    CliRun bogus = invoke({"run", "--config", "x.ini", "--frobnicate"});
    CHECK(bogus.code == 2);

    CliRun missing = invoke({"run", "--config", (scratch() / "nope.ini").string()});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("cannot read config") != std::string::npos);
    // machine-readable error envelope
    nlohmann::json j = nlohmann::json::parse(missing.err);
    CHECK(j["error"] == "validation");
}

TEST_CASE("config violations surface as exit 2 before any compute") {
    fs::path cfg = write_config("bad.ini", "[evolve]\nt_end = 0\n");
    CliRun r = invoke({"run", "--config", cfg.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("t_end") != std::string::npos);

    fs::path cfg2 = write_config("badsuite.ini", kTinyRun);
    CliRun r2 = invoke({"verify", "--config", cfg2.string(), "--suites", "nonsense"});
    CHECK(r2.code == 2);
    CHECK(r2.err.find("unknown suite") != std::string::npos);
}

TEST_CASE("run writes a complete, reproducible trajectory directory") {
    fs::path cfg = write_config("run.ini", kTinyRun);
    fs::path out1 = scratch() / "out1";
    fs::path out2 = scratch() / "out2";
    fs::remove_all(out1);
    fs::remove_all(out2);

    CliRun r = invoke({"run", "--config", cfg.string(), "--output", out1.string()});
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("run complete") != std::string::npos);
    CHECK(fs::exists(out1 / "manifest.json"));
    CHECK(fs::exists(out1 / "ledger.csv"));
    CHECK(fs::exists(out1 / "snapshot_000000.rgpe"));

    nlohmann::json m = nlohmann::json::parse(slurp(out1 / "manifest.json"));
    CHECK(m["command"] == "run");
    CHECK(m["grid"]["n"] == 32);
    CHECK(m["config_hash"].get<std::string>().size() == 16);
    CHECK(m["times"].size() >= 3);   // t=0, strides, final

    CliRun r2 = invoke({"run", "--config", cfg.string(), "--output", out2.string()});
    CHECK(r2.code == 0);
    CHECK(slurp(out1 / "ledger.csv") == slurp(out2 / "ledger.csv"));
    CHECK(slurp(out1 / "snapshot_000000.rgpe") == slurp(out2 / "snapshot_000000.rgpe"));
}

TEST_CASE("verify: single green suite produces a report and exit 0") {
    std::string text = kTinyRun + "[picard]\nt_horizon = 0.05\nquad_nodes = 16\n";
    fs::path cfg = write_config("verify.ini", text);
    fs::path out = scratch() / "verify_out";
    fs::remove_all(out);
    CliRun r = invoke({"verify", "--config", cfg.string(), "--suites", "picard",
                       "--output", out.string()});
    CAPTURE(r.out);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("VERIFY PASS") != std::string::npos);
    REQUIRE(fs::exists(out / "report.json"));
    nlohmann::json rep = nlohmann::json::parse(slurp(out / "report.json"));
    REQUIRE(rep.is_array());
    CHECK(rep.size() >= 4);
    for (const auto& row : rep) CHECK(row["suite"] == "picard");
}

TEST_CASE("fault injection drill: corruption is caught and then cleared") {
    std::string text =
        "[params]\nomega = 1\nbeta = 1\nsigma = 1\n"
        "[grid]\nn = 32\nl = 6\n"
        "[evolve]\ndt = 1e-3\nt_end = 0.1\nsnapshot_stride = 10\n";
    fs::path cfg = write_config("corrupt.ini", text);
    fs::path out = scratch() / "corrupt_out";
    fs::remove_all(out);
    CliRun r = invoke({"verify", "--config", cfg.string(), "--suites", "conservation",
                       "--output", out.string(), "--corrupt-propagator"});
    CAPTURE(r.out);
    CHECK(r.code == 1);
    CHECK(r.out.find("fault injection") != std::string::npos);
    CHECK(r.out.find("VERIFY FAIL") != std::string::npos);
    CHECK(propagator_corruption() == 0.0);   // guard restored the propagator

    nlohmann::json rep = nlohmann::json::parse(slurp(out / "report.json"));
    int fails = 0;
    bool mass_pass = false;
    for (const auto& row : rep) {
        if (!row["pass"].get<bool>()) ++fails;
        if (row["check"] == "mass_drift_rel") mass_pass = row["pass"].get<bool>();
    }
    CHECK(fails >= 1);
    // the injected defect is norm-preserving: mass alone cannot expose it
    CHECK(mass_pass);

    // and the same suite is green once the corruption is gone
    CliRun clean = invoke({"verify", "--config", cfg.string(), "--suites", "conservation",
                           "--output", (scratch() / "clean_out").string()});
    CAPTURE(clean.out);
    CHECK(clean.code == 0);
}

TEST_CASE("oracle: singular and off-range times are rejected") {
    fs::path cfg = write_config("oracle.ini", kTinyRun);
    CliRun sing = invoke({"oracle", "--config", cfg.string(), "--t", "pi"});
    CHECK(sing.code == 2);
    CHECK(sing.err.find("singular") != std::string::npos);

    CliRun neg = invoke({"oracle", "--config", cfg.string(), "--t", "-0.3"});
    CHECK(neg.code == 2);

    CliRun tok = invoke({"oracle", "--config", cfg.string(), "--t", "0.3x"});
    CHECK(tok.code == 2);
    CHECK(tok.err.find("bad time token") != std::string::npos);
}

TEST_CASE("oracle: generic time passes on a reduced grid") {
    fs::path cfg = write_config("oracle.ini", kTinyRun);
    CliRun r = invoke({"oracle", "--config", cfg.string(), "--t", "0.3"});
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("oracle PASS") != std::string::npos);
    CHECK(r.out.find("route=") != std::string::npos);
    CHECK(r.out.find("unitarity_defect") != std::string::npos);
    CHECK(r.out.find("dispersive_ratio") != std::string::npos);
}

TEST_CASE("oracle: quarter period reports the rotated-transform check") {
    fs::path cfg = write_config("oracle.ini", kTinyRun);
    CliRun r = invoke({"oracle", "--config", cfg.string(), "--t", "pi/2"});
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("rotated_ft_ground_state") != std::string::npos);
    CHECK(r.out.find("oracle PASS") != std::string::npos);
}
