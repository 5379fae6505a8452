#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmelab/io.hpp"
#include "qmelab/runner.hpp"

using namespace qmelab;
namespace fs = std::filesystem;

namespace {

std::string base_config(const std::string& scheme, const std::string& extra = "") {
    std::ostringstream s;
    s << R"({
      "system": {
        "energies": [0.0, 0.09, 0.11],
        "couplings": [
          [[0,0],[0,0],[0,0]],
          [[1,0],[0,0],[0,0]],
          [[1,0],[0,0],[0,0]]
        ]
      },
      "baths": [{"beta": 5.0, "gamma": 0.2,
                 "spectral_density": {"kind": "ohmic_exp_cutoff", "eta": 0.2,
                                      "omega_c": 0.5, "cutoff": 1.0}}],
      "scheme": {"name": ")"
      << scheme << R"(", "epsilon": 0.05},
      "counting": {"points": 7},
      "times": {"start": 0.0, "stop": 300.0, "points": 6, "ft_time": 60.0})" << extra
      << "}";
    return s.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qmelab_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("config: schema validation") {
    CHECK_NOTHROW(RunConfig::from_json_text(base_config("secular")));

    // missing beta
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({
        "system": {"energies": [0, 1], "couplings": [[[0,0],[0,0]],[[1,0],[0,0]]]},
        "baths": [{"gamma": 1.0,
                   "spectral_density": {"kind": "ohmic_exp_cutoff"}}],
        "scheme": {"name": "secular"}})"),
                    ConfigError);

    // unknown keys are rejected at every level
    CHECK_THROWS_AS(RunConfig::from_json_text(base_config("secular", R"(, "oops": 1)")),
                    ConfigError);
    CHECK_THROWS_AS(
        RunConfig::from_json_text(base_config("secular", R"(, "times": {"dt": 1})")),
        ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json_text(
                        base_config("secular", R"(, "tolerances": {"bogus": 1e-3})")),
                    ConfigError);

    // malformed scheme / complex pairs
    CHECK_THROWS_AS(RunConfig::from_json_text(base_config("davies")), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({
        "system": {"energies": [0, 1], "couplings": [[0, 0],[1, 0]]},
        "baths": [{"beta": 1, "spectral_density": {"kind": "ohmic_exp_cutoff"}}],
        "scheme": {"name": "secular"}})"),
                    ConfigError);

    const auto cfg = RunConfig::from_json_text(base_config("symmetrized"));
    CHECK(cfg.scheme.kind == SchemeKind::symmetrized);
    CHECK(cfg.resolved_beta_S() == 5.0);
    CHECK(cfg.times.grid().size() == 6);
    CHECK_NOTHROW(RunConfig::from_json_text(cfg.echo_json())); // echo round-trips
}

TEST_CASE("cmd_check: secular passes everything, redfield fails GQDB") {
    const auto sec = RunConfig::from_json_text(base_config("secular"));
    RunOptions opt;
    const auto dir = fresh_dir("check_secular");
    opt.out_dir = dir.string();
    CHECK(cmd_check(sec, opt) == kExitOk);

    const auto report = nlohmann::json::parse(slurp(dir / "check_report.json"));
    CHECK(report.at("all_pass").get<bool>());

    const auto red = RunConfig::from_json_text(base_config("redfield"));
    const auto dir2 = fresh_dir("check_redfield");
    RunOptions opt2;
    opt2.out_dir = dir2.string();
    CHECK(cmd_check(red, opt2) == kExitCheckFailure);
    const auto report2 = nlohmann::json::parse(slurp(dir2 / "check_report.json"));
    bool gqdb_failed = false;
    for (const auto& c : report2.at("checks"))
        if (c.at("check") == "gqdb") gqdb_failed = c.at("verdict") == "fail";
    CHECK(gqdb_failed);
}

TEST_CASE("cmd_evolve: determinism and empty-grid edge case") {
    const auto cfg = RunConfig::from_json_text(base_config("symmetrized"));

    const auto dir1 = fresh_dir("evolve_a");
    const auto dir2 = fresh_dir("evolve_b");
    RunOptions o1, o2;
    o1.out_dir = dir1.string();
    o2.out_dir = dir2.string();
    REQUIRE(cmd_evolve(cfg, o1) == kExitOk);
    REQUIRE(cmd_evolve(cfg, o2) == kExitOk);
    for (const char* name : {"trajectory.csv", "mgf_scan.csv"}) {
        CHECK(sha256_file(dir1 / name) == sha256_file(dir2 / name));
    }

    auto empty = cfg;
    empty.times.points = 0;
    const auto dir3 = fresh_dir("evolve_empty");
    RunOptions o3;
    o3.out_dir = dir3.string();
    REQUIRE(cmd_evolve(empty, o3) == kExitOk);
    const std::string csv = slurp(dir3 / "trajectory.csv");
    CHECK(csv.substr(0, 2) == "t,");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1); // header only
}

TEST_CASE("manifest lists every emitted file with a matching hash") {
    const auto cfg = RunConfig::from_json_text(base_config("secular"));
    const auto dir = fresh_dir("manifest");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(cmd_evolve(cfg, opt) == kExitOk);

    const auto manifest = nlohmann::json::parse(slurp(dir / "run_manifest.json"));
    std::size_t files_on_disk = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().filename() == "run_manifest.json") continue;
        ++files_on_disk;
        bool found = false;
        for (const auto& f : manifest.at("files"))
            if (f.at("path") == entry.path().filename().string())
                found = f.at("sha256") == sha256_file(entry.path());
        CHECK(found);
    }
    CHECK(files_on_disk == manifest.at("files").size());
}

TEST_CASE("cmd_ft emits FT curves with the redfield comparison") {
    const auto cfg = RunConfig::from_json_text(base_config("symmetrized"));
    const auto dir = fresh_dir("ft");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(cmd_ft(cfg, opt) == kExitOk);
    const std::string csv = slurp(dir / "ft_curves.csv");
    CHECK(csv.find("log_g_redfield") != std::string::npos);
}

TEST_CASE("cmd_steady reports coherences and Gibbs mismatch") {
    const auto cfg = RunConfig::from_json_text(base_config("symmetrized"));
    const auto dir = fresh_dir("steady");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(cmd_steady(cfg, opt) == kExitOk);
    const auto report = nlohmann::json::parse(slurp(dir / "steady_report.json"));
    CHECK(report.at("max_coherence").get<double>() > 1e-7);
    CHECK(report.at("max_population_mismatch").get<double>() > 1e-8);
}

TEST_CASE("oracle commands refuse to run when disabled") {
    const auto cfg = RunConfig::from_json_text(base_config("symmetrized"));
    RunOptions opt;
    opt.out_dir = fresh_dir("noracle").string();
    CHECK_THROWS_AS(cmd_oracle(cfg, opt), ConfigError);
    CHECK_THROWS_AS(cmd_fig2(cfg, opt), ConfigError);
    // fig2 also refuses a redfield "Lindblad side"
    auto red = RunConfig::from_json_text(
        base_config("redfield", R"(, "oracle": {"enabled": true, "N": 40})"));
    CHECK_THROWS_AS(cmd_fig2(red, opt), ConfigError);
}

TEST_CASE("cmd_oracle at desk scale emits benchmark curves") {
    const auto cfg = RunConfig::from_json_text(base_config(
        "symmetrized",
        R"(, "oracle": {"enabled": true, "N": 60, "seed": 3, "seeds": 1, "points": 5})"));
    const auto dir = fresh_dir("oracle");
    RunOptions opt;
    opt.out_dir = dir.string();
    opt.workers = 2;
    CHECK(cmd_oracle(cfg, opt) == kExitOk);
    const std::string csv = slurp(dir / "oracle_seed0.csv");
    CHECK(csv.find("q_exact_mgf") != std::string::npos);
    CHECK(csv.substr(0, 1) == "#"); // provenance comment line
    const auto summary = nlohmann::json::parse(slurp(dir / "oracle_summary.json"));
    CHECK(summary.at("seeds").size() == 1);
}
