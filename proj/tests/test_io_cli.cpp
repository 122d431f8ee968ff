#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "strainwave/jsonio.hpp"

#ifdef STRAINWAVE_CLI_PATH
#include <sys/wait.h>
#endif

using namespace strainwave;
namespace fs = std::filesystem;
using io::json;

namespace {

const char* kFullConfig = R"({
  "model": {"s0": 2.0, "strains": [{"d": 1.0, "alpha": 2.0, "mu": 1.0},
                                   {"d": 1.0, "alpha": 0.6, "mu": 0.02}]},
  "grid": {"half_length": 80.0, "n_cells": 640, "t_end": 20.0,
           "snapshot_interval": 4.0, "theta_cfl": 0.8, "scheme": "strang-split"},
  "init": {"bumps": [{"center": 0.0, "half_width": 2.0, "amplitude": 0.002,
                      "shape": "cosine-bump"},
                     {"center": 1.0, "half_width": 2.0, "amplitude": 0.001}]},
  "measure": {"burn_in": 5.0, "speed_tol_lo": 0.06},
  "sweep": {"s0_min": 0.1, "s0_max": 3.0, "points": 50, "refine": false},
  "tie_tol": 1e-8
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config round-trip is a fixed point") {
    const auto c1 = io::parse_config(kFullConfig);
    const auto c2 = io::parse_config(io::serialize_config(c1));
    CHECK(io::config_to_json(c1) == io::config_to_json(c2));
    CHECK(io::config_hash(c1) == io::config_hash(c2));

    CHECK(c1.model.strains.size() == 2);
    CHECK(c1.grid->scheme == sim::Scheme::strang_split);
    CHECK(c1.init->bumps[0].shape == sim::BumpShape::cosine);
    CHECK(c1.init->bumps[1].shape == sim::BumpShape::plateau);
    CHECK(c1.measure->burn_in == 5.0);
    CHECK(c1.measure->speed_tol_lo == 0.06);
    CHECK(c1.measure->speed_tol_hi == 0.02);   // untouched default
    CHECK(c1.sweep->points == 50);
    CHECK(c1.tie_tol == 1e-8);
}

TEST_CASE("hash ignores key order, notices content") {
    const auto a = io::parse_config(
        R"({"model": {"s0": 2.0, "strains": [{"alpha": 1.0, "mu": 1.0}]}})");
    const auto b = io::parse_config(
        R"({"model": {"strains": [{"mu": 1.0, "alpha": 1.0}], "s0": 2.0}})");
    const auto c = io::parse_config(
        R"({"model": {"s0": 2.5, "strains": [{"alpha": 1.0, "mu": 1.0}]}})");
    CHECK(io::config_hash(a) == io::config_hash(b));
    CHECK(io::config_hash(a) != io::config_hash(c));
    CHECK(a.model.strains[0].d == 1.0);   // d defaults to 1
}

TEST_CASE("parse errors name the offending key") {
    auto message_of = [](const char* text) {
        try {
            io::parse_config(text);
        } catch (const ParamError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message_of(R"({})").find("model") != std::string::npos);
    CHECK(message_of(R"({"model": {"s0": 2, "strains": [{"alpha": 1, "mu": 1}]},
                         "grid": {"half_length": 10, "n_cells": 63, "t_end": 1}})")
              .find("grid.n_cells") != std::string::npos);
    CHECK(message_of(R"({"model": {"s0": 2, "strains": [{"alpha": 1, "mu": 1}]},
                         "modle": 1})")
              .find("unknown key") != std::string::npos);
    CHECK(message_of(R"({"model": {"s0": 2, "strains": [{"alpha": 1, "mu": 1}]},
                         "tie_tol": 0.1})")
              .find("tie_tol") != std::string::npos);
    CHECK(message_of(R"({"model": {"s0": 2, "strains": [{"alpha": 1, "mu": 1}]},
                         "init": {"bumps": []}})")
              .find("init") != std::string::npos);
    CHECK(message_of("not json at all").find("not valid JSON") != std::string::npos);
}

TEST_CASE("snapshot CSV carries time, hash, and one column per field") {
    sim::Grid g{16.0, 64};
    sim::Snapshot s;
    s.t = 1.25;
    s.S.assign(g.n_cells, 2.0);
    s.I.assign(2, std::vector<double>(g.n_cells, 0.125));
    s.R.assign(2, std::vector<double>(g.n_cells, 0.5));
    const auto text = io::snapshot_csv(s, g, "deadbeefdeadbeef");

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# t=1.25 config_hash=deadbeefdeadbeef");
    std::getline(in, line);
    CHECK(line == "x,S,I_1,I_2,R_1,R_2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == g.n_cells);
}

TEST_CASE("17-digit formatting survives a parse round-trip") {
    for (double v : {1.0 / 3.0, 0.1, 2.0, 1.5936242600400401, -7.25e-17})
        CHECK(std::stod(io::fmt17(v)) == v);
}

#ifdef STRAINWAVE_CLI_PATH

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(STRAINWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "strainwave_cli" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kCascadeModel = R"({
  "model": {"s0": 2.0, "strains": [{"d": 1.0, "alpha": 2.0, "mu": 1.0},
                                   {"d": 1.0, "alpha": 0.6, "mu": 0.02}]}
})";

const char* kVerifyModel = R"({
  "model": {"s0": 2.0, "strains": [{"d": 1.0, "alpha": 1.0, "mu": 1.0},
                                   {"d": 1.0, "alpha": 0.1, "mu": 1.0}]},
  "grid": {"half_length": 120.0, "n_cells": 960, "t_end": 40.0,
           "snapshot_interval": 2.0}%s
})";

} // namespace

TEST_CASE("cli: analyze writes outcome and manifest, bit-identical on rerun") {
    const auto dir = fresh_dir("analyze");
    write_text(dir / "cfg.json", kCascadeModel);
    const std::string cfg = (dir / "cfg.json").string();

    CHECK(run_cli("analyze --config " + cfg + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("analyze --config " + cfg + " --out " + (dir / "b").string()) == 0);

    const auto out1 = slurp(dir / "a" / "outcome.json");
    CHECK(out1 == slurp(dir / "b" / "outcome.json"));
    const auto outcome = json::parse(out1);
    CHECK(outcome["indices"] == json::array({1, 2}));
    CHECK(outcome["theorem_applicable"] == true);

    auto m1 = json::parse(slurp(dir / "a" / "manifest.json"));
    auto m2 = json::parse(slurp(dir / "b" / "manifest.json"));
    CHECK(m1["status"] == "ok");
    CHECK(m1["command"] == "analyze");
    CHECK(m1["outputs"] == json::array({"outcome.json"}));
    for (auto* m : {&m1, &m2}) {
        m->erase("started_utc");
        m->erase("finished_utc");
        m->erase("out_dir");
    }
    CHECK(m1 == m2);
}

TEST_CASE("cli: config problems exit 2") {
    const auto dir = fresh_dir("badcfg");
    write_text(dir / "bad.json", R"({"model": {"s0": -1,
        "strains": [{"alpha": 1, "mu": 1}]}})");
    CHECK(run_cli("analyze --config " + (dir / "bad.json").string()) == 2);
    CHECK(run_cli("analyze --config " + (dir / "missing.json").string()) == 2);
    CHECK(run_cli("analyze") == 2);   // --config is required
    CHECK(run_cli("") == 2);          // a subcommand is required
    // simulate needs a grid section
    write_text(dir / "nogrid.json", kCascadeModel);
    CHECK(run_cli("simulate --config " + (dir / "nogrid.json").string()) == 2);
}

TEST_CASE("cli: verify exits 3 on a tie and 4 on a forced mismatch") {
    const auto dir = fresh_dir("verify");
    write_text(dir / "tie.json", R"({
      "model": {"s0": 2.0, "strains": [{"alpha": 1.0, "mu": 1.0},
                                       {"alpha": 1.0, "mu": 1.0}]},
      "grid": {"half_length": 50.0, "n_cells": 200, "t_end": 5.0}})");
    CHECK(run_cli("verify --config " + (dir / "tie.json").string() + " --out " +
                  (dir / "tie_out").string()) == 3);
    const auto rep = json::parse(slurp(dir / "tie_out" / "verify_report.json"));
    CHECK(rep["status"] == "inapplicable");
    CHECK_FALSE(rep.contains("front_report"));

    char buf[1024];
    std::snprintf(buf, sizeof buf, kVerifyModel,
                  R"(,
  "measure": {"burn_in": 15.0, "speed_tol_lo": 1e-9, "speed_tol_hi": 1e-9})");
    write_text(dir / "tight.json", buf);
    CHECK(run_cli("verify --config " + (dir / "tight.json").string() + " --out " +
                  (dir / "tight_out").string()) == 4);
    const auto rep2 = json::parse(slurp(dir / "tight_out" / "verify_report.json"));
    CHECK(rep2["status"] == "mismatch");
    CHECK(rep2["front_report"]["overall_pass"] == false);
}

TEST_CASE("cli: simulate streams snapshots; a swamped domain aborts with exit 5") {
    const auto dir = fresh_dir("simulate");
    char buf[1024];
    std::snprintf(buf, sizeof buf, kVerifyModel, "");
    write_text(dir / "ok.json", buf);
    const auto okdir = dir / "ok_out";
    CHECK(run_cli("simulate --config " + (dir / "ok.json").string() + " --out " +
                  okdir.string()) == 0);
    CHECK(fs::exists(okdir / "snapshot_0000.csv"));
    CHECK(fs::exists(okdir / "snapshot_0020.csv"));   // t=0..40 every 2
    CHECK(slurp(okdir / "snapshot_0000.csv").rfind("# t=0 ", 0) == 0);
    const auto rep = json::parse(slurp(okdir / "front_report.json"));
    CHECK(rep["overall_pass"] == true);
    const auto cmp = slurp(okdir / "comparison.csv");
    CHECK(cmp.rfind("strain,predicted_propagates,measured_propagates,", 0) == 0);

    write_text(dir / "small.json", R"({
      "model": {"s0": 2.0, "strains": [{"alpha": 1.0, "mu": 1.0}]},
      "grid": {"half_length": 40.0, "n_cells": 160, "t_end": 30.0}})");
    const auto abdir = dir / "abort_out";
    CHECK(run_cli("simulate --config " + (dir / "small.json").string() + " --out " +
                  abdir.string()) == 5);
    const auto man = json::parse(slurp(abdir / "manifest.json"));
    CHECK(man["status"] == "aborted");
    const std::string reason = man["abort_reason"];
    CHECK(reason.find("enlarge the domain") != std::string::npos);
    CHECK(fs::exists(abdir / "snapshot_0000.csv"));   // partial stream is kept
}

TEST_CASE("cli: sweep then plot its CSV to an SVG") {
    const auto dir = fresh_dir("sweep");
    write_text(dir / "sweep.json", R"({
      "model": {"s0": 1.0, "strains": [{"d": 1.0, "alpha": 2.0, "mu": 1.0},
                                       {"d": 10.0, "alpha": 1.0, "mu": 1.0}]},
      "sweep": {"s0_min": 0.05, "s0_max": 4.0, "points": 60, "refine": false}})");
    const auto swdir = dir / "out";
    CHECK(run_cli("sweep --config " + (dir / "sweep.json").string() + " --out " +
                  swdir.string() + " --jobs 2") == 0);
    for (const char* f : {"sweep.csv", "sweep_plot.csv", "sweep_summary.json", "sweep.svg"})
        CHECK(fs::exists(swdir / f));
    const auto summary = json::parse(slurp(swdir / "sweep_summary.json"));
    CHECK(summary["all_agree_outside_gap"] == true);
    CHECK(summary["s_low"] == doctest::Approx(1.125).epsilon(1e-15));
    CHECK(slurp(swdir / "sweep_plot.csv").rfind("s0,s_infinity", 0) == 0);

    const auto svg_path = dir / "curve.svg";
    CHECK(run_cli("plot --input " + (swdir / "sweep_plot.csv").string() + " --out " +
                  svg_path.string()) == 0);
    CHECK(slurp(svg_path).rfind("<svg", 0) == 0);
    CHECK(run_cli("plot --input " + (dir / "nope.csv").string()) == 2);
}

#endif // STRAINWAVE_CLI_PATH
