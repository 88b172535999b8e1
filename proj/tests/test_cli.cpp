#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexlab/config.hpp"
#include "vortexlab/csv.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/runner.hpp"

using namespace vtx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vortexlab_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int c = 0;
        return c++;
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

std::string slurp(const std::string& p) {
    std::ifstream is(p);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const char* kRdlConfig = R"(
# reduced-law run on the unit torus
vortices = [[0.5, 0.4, 1], [0.5, 0.6, -1]]
Q0 = "auto"
dt = 1e-4
t_end = 0.01
stop_dist = 1e-3
record_every = 10

[geometry]
l = 1.0
w = 1.0
)";

} // namespace

TEST_CASE("config parses sections, arrays, strings and comments") {
    const Config cfg = Config::parse(kRdlConfig);
    CHECK(cfg.number("geometry.l") == 1.0);
    CHECK(cfg.number("dt") == 1e-4);
    CHECK(cfg.text("Q0") == "auto");
    CHECK(cfg.integer("record_every") == 10);
    const auto rows = cfg.table("vortices");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][2] == -1.0);
    CHECK(cfg.number_or("missing", 7.5) == 7.5);
}

TEST_CASE("config rejects malformed and unknown input") {
    CHECK_THROWS_AS(Config::parse("key"), ConfigError);
    CHECK_THROWS_AS(Config::parse("k = [1, 2"), ConfigError);
    CHECK_THROWS_AS(Config::parse("k = \"unterminated"), ConfigError);
    CHECK_THROWS_AS(Config::parse("k = 1\nk = 2"), ConfigError);
    CHECK_THROWS_AS(Config::parse("k = 12abc"), ConfigError);

    const Config cfg = Config::parse("a = 1\nb = 2");
    CHECK_THROWS_AS(cfg.require_known({"a"}), ConfigError);
    cfg.require_known({"a", "b"});

    // unknown keys are rejected by every runner entry point
    CHECK_THROWS_AS(
        runner::rdl_run(Config::parse("typo = 1\nvortices = [[0.5,0.4,1],[0.5,0.6,-1]]"),
                        "/dev/null"),
        ConfigError);
}

TEST_CASE("Q0 accepts auto or an explicit pair") {
    const Config cfg = Config::parse(kRdlConfig);
    const auto a = runner::configuration_from(cfg);
    const Vec2 q_auto = runner::q0_from(cfg, a);
    CHECK(q_auto.x == doctest::Approx(Q0_of(a).x));
    const Config explicit_cfg = Config::parse(
        "vortices = [[0.5, 0.4, 1], [0.5, 0.6, -1]]\nQ0 = [0.25, -1.0]");
    const Vec2 q = runner::q0_from(explicit_cfg, a);
    CHECK(q.x == 0.25);
    CHECK(q.y == -1.0);
    CHECK_THROWS_AS(
        runner::q0_from(Config::parse("Q0 = \"nonsense\""), a), ConfigError);
}

TEST_CASE("full-precision CSV cells survive a text round trip") {
    TempDir dir;
    const std::string path = dir.file("t.csv");
    {
        CsvWriter csv(path, {"a", "b"});
        csv.row({1.0 / 3.0, -2.718281828459045e-7});
    }
    const std::string text = slurp(path);
    CHECK(text.find("a,b\n") == 0);
    double a = 0, b = 0;
    REQUIRE(std::sscanf(text.c_str() + 4, "%lf,%lf", &a, &b) == 2);
    CHECK(a == 1.0 / 3.0);
    CHECK(b == -2.718281828459045e-7);
}

TEST_CASE("rdl-run writes the trajectory table and summary") {
    TempDir dir;
    const std::string out = dir.file("traj.csv");
    const auto result = runner::rdl_run(Config::parse(kRdlConfig), out);
    CHECK(result.trajectory.status == ReducedTrajectory::Status::completed);
    const std::string text = slurp(out);
    CHECK(text.rfind("t,x1,y1,x2,y2,qx,qy,WT,xi,min_dist\n", 0) == 0);
    // header + 11 recorded states (0, 10 strides, final)
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 12);
}

TEST_CASE("green-table emits the five-column grid") {
    TempDir dir;
    const std::string out = dir.file("green.csv");
    runner::green_table({1.0, 1.0}, 16, out);
    const std::string text = slurp(out);
    CHECK(text.rfind("x,y,F,dF_dx,dF_dy\n", 0) == 0);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 256); // 16*16 nodes, origin skipped, plus header
}

TEST_CASE("gamma run writes the JSON record") {
    TempDir dir;
    const std::string out = dir.file("gamma.json");
    const auto result = runner::gamma_run({0.1, 0.05, 0.025}, 2048, out);
    CHECK(result.constant.gamma > 0.0);
    CHECK(result.I_values.size() == 3);
    const std::string text = slurp(out);
    CHECK(text.find("\"gamma\"") != std::string::npos);
    CHECK(text.find("\"ladder\"") != std::string::npos);
    CHECK(text.find("\"I_values\"") != std::string::npos);
    CHECK(text.find("\"residuals\"") != std::string::npos);
}

TEST_CASE("field build, stats and track round trip") {
    TempDir dir;
    const char* field_cfg = R"(
vortices = [[0.5, 0.4, 1], [0.5, 0.6, -1]]
[field]
kind = "initial"
eps = 0.05
grid = 128
profile = "tanh"
)";
    const std::string vxf = dir.file("u0.vxf");
    runner::field_build(Config::parse(field_cfg), vxf);
    const std::string stats = runner::field_stats(vxf);
    CHECK(stats.find("\"mass\"") != std::string::npos);
    CHECK(stats.find("\"vortices\"") != std::string::npos);

    // a directory of snapshots from an actual NLSE run, then tracking
    const char* nlse_cfg = R"(
vortices = [[0.5, 0.4, 1], [0.5, 0.6, -1]]
[nlse]
eps = 0.05
grid = 128
dt = 1e-5
t_end = 2e-3
snapshot_every = 50
profile = "tanh"
)";
    const std::string run_dir = dir.file("run");
    const auto run_result = runner::nlse_run(Config::parse(nlse_cfg), run_dir);
    CHECK(run_result.report.steps == 200);
    CHECK(run_result.snapshot_files.size() == 5);
    CHECK(fs::exists(run_dir + "/observables.csv"));

    const std::string paths_csv = dir.file("paths.csv");
    runner::track_run(run_dir, paths_csv);
    const std::string text = slurp(paths_csv);
    CHECK(text.rfind("t,x1,y1,d1,x2,y2,d2,status", 0) == 0);
    CHECK(text.find("lost") == std::string::npos);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 6);
}

TEST_CASE("figures emit six scenario tables plus a manifest, bit-stable") {
    TempDir dir;
    const std::string out1 = dir.file("fig1");
    const std::string out2 = dir.file("fig2");
    runner::figures(out1, 0.02, 0.02);
    runner::figures(out2, 0.02, 0.02);
    const char* names[] = {"fig3_left.csv",   "fig3_middle.csv",
                           "fig3_right.csv",  "fig4_left.csv",
                           "fig4_middle.csv", "fig4_right.csv",
                           "manifest.json"};
    for (const char* n : names) {
        REQUIRE(fs::exists(out1 + "/" + n));
        CHECK(slurp(out1 + "/" + n) == slurp(out2 + "/" + n));
    }
    const std::string manifest = slurp(out1 + "/manifest.json");
    CHECK(manifest.find("\"winding\"") != std::string::npos);
    CHECK(manifest.find("fig4_right.csv") != std::string::npos);
}

TEST_CASE("selftest passes quietly") {
    CHECK(runner::selftest(false) == 0);
}
